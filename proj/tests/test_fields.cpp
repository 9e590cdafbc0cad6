#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "oracles.hpp"
#include "riesz/errors.hpp"
#include "riesz/fields.hpp"

using namespace riesz;

namespace {

std::vector<RadialField> generic_fields() {
  return {RadialField::power(1.3, 3.0),          RadialField::power(0.7, 0.5),
          RadialField::lennard_jones(5, 0.95, -6, -12), RadialField::lennard_jones(1, 1, 3, 2),
          RadialField::exponential(1, 1, 2),     RadialField::exponential(0.5, 0.8, 1.3),
          RadialField::power_log(1, 2),          RadialField::power_log(0.4, 3.5),
          RadialField::power_sink(1, 2, 0.5),    RadialField::power_sink(1, 5.0, 0.5)};
}

}  // namespace

TEST_CASE("closed-form spot values") {
  CHECK(field_eval(RadialField::power(1, 2), 4.0, 0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(field_eval(RadialField::lennard_jones(5, 0.95, -6, -12), 1.0, 1) == doctest::Approx(0.125).epsilon(1e-13));
  CHECK(field_eval(RadialField::power_sink(1, 2, 1), 1.0, 0) == 0.0);
  CHECK(field_eval(RadialField::power_log(1, 2), 1.0, 0) == 0.0);
  CHECK(field_eval(RadialField::exponential(2, 1, 2), 0.0, 0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("finite-difference consistency for every variant") {
  for (const auto& f : generic_fields()) {
    INFO(type_name(f.type), " alpha=", f.alpha);
    for (double rho : {0.5, 1.0, 2.0, 10.0}) {
      for (int k = 1; k <= 3; ++k) {
        const double h = 1e-3 * rho;
        const double fd = oracle::derivative([&](double x) { return field_eval(f, x, k - 1); }, rho, h);
        const double an = field_eval(f, rho, k);
        CHECK(std::abs(fd - an) <= 1e-6 * std::max(1.0, std::abs(an)));
      }
    }
  }
}

TEST_CASE("Lennard-Jones inflection and minimum") {
  const double g = 1.0, eta = 0.75, a = -6.0, b = -12.0;
  const RadialField f = RadialField::lennard_jones(g, eta, a, b);
  const double infl = std::pow(eta * (2 - b) / (2 - a), 2 / (a - b));
  int flips = 0;
  double prev = field_eval(f, 0.05, 2);
  for (int i = 1; i <= 4000; ++i) {
    const double rho = 0.05 * std::pow(400.0, i / 4000.0);
    const double cur = field_eval(f, rho, 2);
    if ((cur > 0) != (prev > 0)) {
      ++flips;
      CHECK(std::abs(rho - infl) < 0.01 * infl);
    }
    prev = cur;
  }
  CHECK(flips == 1);

  const double rho_min = std::pow(eta, 2 / (a - b));
  const double v_min = -g * ((a - b) / (a * b)) * std::pow(eta, a / (a - b));
  CHECK(field_eval(f, rho_min, 0) == doctest::Approx(v_min).epsilon(1e-13));
  CHECK(std::abs(field_eval(f, rho_min, 1)) < 1e-12);
  for (double t : {0.9, 0.99, 1.01, 1.1, 3.0}) CHECK(field_eval(f, t * rho_min, 0) > v_min);
}

TEST_CASE("inverse-coordinate field q") {
  const RieszParams p{10, 2.0};
  const double c = 4.0 / 7.0;
  for (double alpha : {1.5, 4.0}) {
    const double Rs = std::pow(c / 2, 1 / (alpha + 2.0));
    const RadialField f = RadialField::power(1, alpha);
    for (double k : {0.1, 0.5, 0.9}) {
      CHECK(q_eval(f, p, Rs, k, 0) == doctest::Approx(c / 2 * std::pow(k, -(2.0 + alpha) / 2)).epsilon(1e-12));
    }
    CHECK(q_eval(f, p, Rs, 0.0, 0) == std::numeric_limits<double>::infinity());
  }
  // Lennard-Jones on the unit sphere with alpha = -2 - s: q = gamma k (1 - eta k^{b/2-1}), b = alpha - beta + 2
  const RieszParams p8{8, 4.0};
  const RadialField lj = RadialField::lennard_jones(5, 0.95, -6, -12);
  for (double k : {0.1, 0.5, 0.9}) {
    CHECK(q_eval(lj, p8, 1.0, k, 0) == doctest::Approx(5 * k * (1 - 0.95 * std::pow(k, 3.0))).epsilon(1e-12));
    const double fd = oracle::derivative([&](double x) { return q_eval(lj, p8, 1.0, x, 0); }, k, 1e-4);
    CHECK(q_eval(lj, p8, 1.0, k, 1) == doctest::Approx(fd).epsilon(1e-8));
  }
}

TEST_CASE("confinement screening") {
  const auto r1 = confinement_check(RadialField::power(1, 4), {10, 2.0});
  CHECK(r1.satisfied);
  CHECK(r1.clause == ConfinementClause::a);
  const auto r2 = confinement_check(RadialField::lennard_jones(5, 0.95, -6, -12), {8, 4.0});
  CHECK_FALSE(r2.satisfied);
  const auto r3 = confinement_check(RadialField::power(1, 2), {6, 0.0});
  CHECK(r3.satisfied);
  CHECK(r3.clause == ConfinementClause::b);
  const auto r4 = confinement_check(RadialField::power(1, 2), {6, -1.0});
  CHECK(r4.satisfied);
  CHECK(r4.clause == ConfinementClause::c);
  // s < 0 with a field too weak to beat 2^{-s}
  CHECK_FALSE(confinement_check(RadialField::power(0.1, 1.0), {6, -1.0}).satisfied);
}

TEST_CASE("limits and symbolic tails") {
  const auto lp = field_limits(RadialField::power(1, 4));
  CHECK(lp.v_at_zero == 0.0);
  CHECK(lp.v_at_infinity == std::numeric_limits<double>::infinity());
  const auto lj = field_limits(RadialField::lennard_jones(5, 0.95, -6, -12));
  CHECK(lj.v_at_zero == std::numeric_limits<double>::infinity());
  CHECK(lj.v_at_infinity == 0.0);
  CHECK(field_limits(RadialField::power_log(1, 2)).v_at_zero == 0.0);
}

TEST_CASE("global sign checks are decided in closed form") {
  const auto conv = check_sign(RadialField::power(1, 4), 2, 1, 0, 0, std::numeric_limits<double>::infinity(), +1);
  CHECK(conv.holds);
  CHECK_FALSE(conv.heuristic);
  const auto nonconv = check_sign(RadialField::power(1, 1.35), 2, 1, 0, 0, std::numeric_limits<double>::infinity(), +1);
  CHECK_FALSE(nonconv.holds);
  const auto expo = check_sign(RadialField::exponential(1, 1, 2), 2, 1, 0, 0, std::numeric_limits<double>::infinity(), +1);
  CHECK(expo.holds);
  CHECK_FALSE(expo.heuristic);
}

TEST_CASE("domain and order errors") {
  CHECK_THROWS_AS(field_eval(RadialField::power(1, 2), -1.0, 0), DomainError);
  RadialField f = RadialField::power(1, 2);
  f.smoothness_order = 2;
  CHECK_THROWS_AS(field_eval(f, 1.0, 3), OrderUnavailable);
  CHECK_THROWS_AS(validate(RadialField::power(-1, 2)), DomainError);
  CHECK_THROWS_AS(validate(RadialField::lennard_jones(1, 1, 2, 3)), DomainError);
}

TEST_CASE("field JSON round trip and strict keys") {
  for (const auto& f : generic_fields()) {
    const RadialField g = field_from_json(field_to_json(f));
    CHECK(g.type == f.type);
    CHECK(g.gamma == f.gamma);
    CHECK(g.alpha == f.alpha);
    CHECK(g.beta == f.beta);
    CHECK(g.eta == f.eta);
    CHECK(g.R0 == f.R0);
  }
  CHECK_THROWS_AS(field_from_json(nlohmann::json::parse(R"({"type":"power","gamma":1,"alpha":2,"beta":1})")),
                  DomainError);
  CHECK_THROWS_AS(field_from_json(nlohmann::json::parse(R"({"type":"cubic","gamma":1})")), DomainError);
  CHECK_THROWS_AS(field_from_json(nlohmann::json::parse(R"({"type":"power","gamma":1})")), DomainError);
}
