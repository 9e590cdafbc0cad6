#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "oracles.hpp"
#include "riesz/equilibrium.hpp"
#include "riesz/errors.hpp"

using namespace riesz;

namespace {

const RieszParams P10{10, 2.0};
const double C10 = 4.0 / 7.0;

double r_star(double gamma, double alpha, double c = C10, double s = 2.0) {
  return std::pow(c / (2 * gamma), 1 / (alpha + s));
}

double pochhammer(double a, int n) {
  double out = 1.0;
  for (int j = 0; j < n; ++j) out *= a + j;
  return out;
}

// d/dR [2 v(R^2) + I_s(sigma_R)] by a five-point stencil
double energy_slope(const RieszParams& p, const RadialField& f, double R) {
  auto E = [&](double r) { return 2 * field_eval(f, r * r, 0) + sphere_energy(p, r); };
  return oracle::derivative(E, R, 1e-4 * R);
}

}  // namespace

TEST_CASE("modified potential at the origin and on the sphere") {
  const RadialField f = RadialField::power(1, 4);
  const double R = r_star(1, 4);
  const ModifiedPotentialCtx ctx{P10, f, R};
  CHECK(std::abs(f_eval(ctx, 1.0, 1)) < 1e-12);
  CHECK(f_eval(ctx, 0.0, 0) == doctest::Approx(std::pow(R, -2.0) / 2).epsilon(1e-13));
  const ModifiedPotentialCtx lj{{8, 4.0}, RadialField::lennard_jones(5, 0.95, -6, -12), 1.0};
  CHECK(f_eval(lj, 0.0, 0) == std::numeric_limits<double>::infinity());
}

TEST_CASE("f derivatives match finite differences") {
  const ModifiedPotentialCtx ctx{{8, 1.5}, RadialField::exponential(1, 0.7, 1.5), 0.9};
  for (double lam : {0.2, 0.6, 1.6, 4.0}) {
    for (int k = 1; k <= 2; ++k) {
      const double fd = oracle::derivative([&](double x) { return f_eval(ctx, x, k - 1); }, lam,
                                           1e-3 * std::min(lam, std::abs(lam - 1)));
      CHECK(std::abs(fd - f_eval(ctx, lam, k)) <= 1e-6 * std::max(1.0, std::abs(fd)));
    }
  }
}

TEST_CASE("bridge between f and g") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> ur(0.5, 2.0), us(-1.5, 5.0);
  const std::vector<RadialField> fields = {RadialField::power(1, 3), RadialField::lennard_jones(1, 1, 3, 2),
                                           RadialField::exponential(1, 1, 2), RadialField::power_log(1, 2)};
  for (int i = 0; i < 20; ++i) {
    const RieszParams p{10, us(rng)};
    const ModifiedPotentialCtx ctx{p, fields[i % fields.size()], ur(rng)};
    for (double k : {0.1, 0.5, 0.9}) {
      const double g = g_eval(ctx, k, 0);
      const double bridge = 2 * std::pow(ctx.R, p.s) * std::pow(k, -p.s / 2 - 1) * f_eval(ctx, 1 / k, 1);
      CHECK(std::abs(g - bridge) <= 1e-9 * (1 + std::abs(g)));
    }
  }
}

TEST_CASE("companion g for a power law at the stationary radius") {
  const double alpha = 4.0;
  const ModifiedPotentialCtx ctx{P10, RadialField::power(1, alpha), r_star(1, alpha)};
  CHECK(std::abs(g_eval(ctx, 1.0, 0)) < 1e-12);
  CHECK(y_eval(P10, 0.0, 0) == -1.0);
  // y^{(l)}(1) by Gauss summation; q^{(l)}(1) = (c/2) (-(s+alpha)/2)_l falling
  const double s = 2.0, d = 10.0;
  const double A = s / 2 + 1, B = (2 + s - d) / 2, C = d / 2;
  for (int l = 1; l <= 5; ++l) {
    const double y = -pochhammer(A, l) * pochhammer(B, l) * std::tgamma(C) * std::tgamma(C - A - B - l) /
                     (std::tgamma(C - A) * std::tgamma(C - B));
    const double q = C10 / 2 * std::pow(-1.0, l) * pochhammer((s + alpha) / 2, l);
    CHECK(g_eval(ctx, 1.0, l) == doctest::Approx(y + q).epsilon(1e-9));
  }
}

TEST_CASE("stationary radii") {
  const auto pw = stationary_radii(P10, RadialField::power(1, 4));
  REQUIRE(pw.radii.size() == 1);
  CHECK(pw.radii[0] == doctest::Approx(std::pow(4.0 / 14.0, 1.0 / 6.0)).epsilon(1e-13));
  CHECK(pw.closed_form);

  const RieszParams p8{8, 4.0};
  const auto lj = stationary_radii(p8, RadialField::lennard_jones(5, 0.95, -6, -12));
  REQUIRE(lj.radii.size() == 2);
  CHECK(std::abs(lj.radii[0] - 1.0) < 1e-10);
  CHECK(std::abs(lj.radii[1] - 4.47) < 0.05);
  CHECK(stationary_radii(p8, RadialField::lennard_jones(1.0 / 3, 0.5, -6, -12)).radii.empty());
}

TEST_CASE("stationary radii are critical points of the sphere energy") {
  const std::vector<std::pair<RieszParams, RadialField>> cases = {
      {{8, 4.0}, RadialField::lennard_jones(5, 0.95, -6, -12)}, {P10, RadialField::lennard_jones(1, 1, 3, 2)},
      {P10, RadialField::exponential(1, 1, 2)},                 {P10, RadialField::power_log(1, 2)},
      {P10, RadialField::power_sink(1, 2, 0.5)},                {{6, 0.0}, RadialField::power(1, 3)}};
  for (const auto& [p, f] : cases) {
    for (double R : stationary_radii(p, f).radii) {
      const double scale = std::abs(2 * field_eval(f, R * R, 1) * 2 * R);
      CHECK(std::abs(energy_slope(p, f, R)) <= 1e-6 * std::max(1.0, scale));
    }
  }
}

TEST_CASE("family radius equations") {
  // each family's own closed-form stationarity equation, independent of the root finder
  const double c = C10, s = 2.0;
  const double R_lj = stationary_radii(P10, RadialField::lennard_jones(1, 1, 3, 2)).radii.at(0);
  CHECK(std::abs(std::pow(R_lj, 3 + s) - std::pow(R_lj, 2 + s) - c / 2) < 1e-10);
  const double R_exp = stationary_radii(P10, RadialField::exponential(1, 1, 2)).radii.at(0);
  CHECK(std::abs(std::pow(R_exp, s + 2) * std::exp(R_exp * R_exp) - c / 2) < 1e-10);
  const double R_log = stationary_radii(P10, RadialField::power_log(1, 2)).radii.at(0);
  CHECK(std::abs(std::pow(R_log, s + 2) * (2 * std::log(R_log) + 1) - c / 4) < 1e-10);
  const auto sink = stationary_radii(P10, RadialField::power_sink(1, 2, 0.5)).radii;
  REQUIRE(sink.size() == 1);
  CHECK(std::abs(std::pow(sink[0], s + 2) / 2 - c / 4) < 1e-10);
}

TEST_CASE("necessary conditions for power laws") {
  {
    const ModifiedPotentialCtx ctx{P10, RadialField::power(1, 4), r_star(1, 4)};
    const auto rep = necessary_report(ctx);
    CHECK(rep.all_pass());
    CHECK(rep.cond_iii.lhs == doctest::Approx(-1.0 / 14).epsilon(1e-12));
    CHECK(rep.cond_iii.rhs == doctest::Approx(-3.0 / 14).epsilon(1e-12));
  }
  {
    const ModifiedPotentialCtx ctx{P10, RadialField::power(1, 1.3), r_star(1, 1.3)};
    const auto rep = necessary_report(ctx);
    CHECK_FALSE(rep.cond_iii.pass);
    CHECK(rep.first_failure() == "iii");
    CHECK(rep.cond_iii.lhs == doctest::Approx(-C10 / 2.6).epsilon(1e-12));
    CHECK(rep.cond_iii.rhs == doctest::Approx(-3.0 / 14).epsilon(1e-12));
  }
  {
    // (ii) holds with equality at alpha = 2 - (s+2)(d-s-4)/(2(d-s-3)) = 0.4
    const double a = 0.4;
    const ModifiedPotentialCtx ctx{P10, RadialField::power(1, a), r_star(1, a)};
    const auto rep = necessary_report(ctx);
    CHECK(rep.cond_ii.pass);
    CHECK(rep.cond_ii.lhs == doctest::Approx(rep.cond_ii.rhs).epsilon(1e-12));
  }
  CHECK_THROWS_AS(necessary_report({{6, 3.5}, RadialField::power(1, 4), 1.0}), DomainError);
}

TEST_CASE("power-law threshold") {
  for (int d : {6, 8, 10}) CHECK(alpha_threshold({d, d - 4.0}) == 2.0);
  CHECK(alpha_threshold(P10) == doctest::Approx(4.0 / 3).epsilon(1e-14));
  for (int d : {4, 6, 9}) {
    const double a0 = alpha_threshold({d, 0.0});
    CHECK(std::abs(alpha_threshold({d, 0.001}) - a0) < 1e-2);
    CHECK(std::abs(alpha_threshold({d, -0.001}) - a0) < 1e-2);
    const double bd = 0.5 * (oracle::digamma(0.5 * d) - oracle::digamma(d - 1.0));
    CHECK(a0 == doctest::Approx(std::max(-1 / (2 * bd), 2 - (d - 4.0) / (d - 3.0))).epsilon(1e-12));
  }
  CHECK_THROWS_AS(alpha_threshold({10, 7.5}), DomainError);
}

TEST_CASE("power-law verdicts and energies") {
  const auto v4 = power_law_verdict(P10, 1, 4);
  CHECK(v4.verdict.kind == VerdictKind::certified_sphere);
  CHECK(v4.R_star == doctest::Approx(std::pow(2.0 / 7, 1.0 / 6)).epsilon(1e-13));
  const double R = v4.R_star;
  CHECK(v4.energy == doctest::Approx(std::pow(R, -2.0) / 2 * C10 + 2 * std::pow(R, 4.0) / 4).epsilon(1e-13));
  // (alpha+s)(2 gamma)^{s/(alpha+s)} c^{alpha/(alpha+s)} / (alpha s)
  CHECK(v4.energy == doctest::Approx(6 * std::pow(2.0, 2.0 / 6) * std::pow(C10, 4.0 / 6) / 8).epsilon(1e-13));

  const auto v13 = power_law_verdict(P10, 1, 1.3);
  CHECK(v13.verdict.kind == VerdictKind::necessary_fail);
  CHECK(v13.verdict.failed_condition == "iii");

  const auto v135 = power_law_verdict(P10, 1, 1.35);
  CHECK(v135.verdict.kind == VerdictKind::certified_sphere);
  const ModifiedPotentialCtx ctx{P10, RadialField::power(1, 1.35), v135.R_star};
  CHECK_FALSE(sufficient_certify(ctx, Certificate::global_convexity).holds);
  CHECK(sufficient_certify(ctx, Certificate::ladder_inside).holds);
  CHECK(sufficient_certify(ctx, Certificate::ladder_outside).holds);

  // s = 0 branch against the closed form and the decomposition
  for (int d : {4, 6, 9}) {
    const RieszParams p{d, 0.0};
    const double g = 0.8, a = 3.0;
    const double want = (1 + std::log(2 * g)) / a - std::log(2.0) +
                        0.5 * (oracle::digamma(d - 1.0) - oracle::digamma(0.5 * (d - 1)));
    CHECK(power_law_energy(p, g, a) == doctest::Approx(want).epsilon(1e-12));
    const double Rs = power_law_radius(p, g, a);
    CHECK(power_law_energy(p, g, a) ==
          doctest::Approx(sphere_energy(p, Rs) + 2 * field_eval(RadialField::power(g, a), Rs * Rs, 0)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(power_law_verdict(P10, 1, -1.0), DomainError);
  CHECK_THROWS_AS(power_law_verdict({6, -1.0}, 1, 0.5), DomainError);
}

TEST_CASE("sufficient certificates") {
  const auto exp_f = RadialField::exponential(1, 1, 2);
  const double R = stationary_radii(P10, exp_f).radii.at(0);
  const auto cert = sufficient_certify({P10, exp_f, R}, Certificate::global_convexity);
  CHECK(cert.holds);
  CHECK_FALSE(cert.heuristic);

  const ModifiedPotentialCtx lj{{8, 4.0}, RadialField::lennard_jones(5, 0.95, -6, -12), 1.0};
  const auto a1 = sufficient_certify(lj, Certificate::lj_unit_sphere);
  CHECK(a1.holds);
  CHECK(a1.evidence.size() >= 3);
  for (const auto& e : a1.evidence) CHECK(e.holds);

  CHECK_THROWS_AS(sufficient_certify({P10, exp_f, R}, Certificate::inside_higher_derivative), WrongWindow);
  CHECK_THROWS_AS(sufficient_certify({P10, exp_f, R}, Certificate::outside_weighted_convexity), WrongWindow);
}

TEST_CASE("half-monotone to unimodal") {
  UnimodalCertificate c1{1, 3, {-1, -1, 0}, true, false};
  const auto r1 = unimodal_certify(c1);
  CHECK(r1.unimodal);
  CHECK(r1.increasing);

  UnimodalCertificate c2{3, 4, {1, 1, -1, -1}, true, true};
  const auto r2 = unimodal_certify(c2);
  CHECK(r2.unimodal);
  CHECK(r2.not_increasing_whole);
  CHECK_FALSE(r2.increasing);

  UnimodalCertificate bad{3, 4, {1, -1, -1, -1}, true, false};
  CHECK_THROWS_AS(unimodal_certify(bad), MalformedCertificate);
  UnimodalCertificate short_data{2, 3, {1, -1}, true, false};
  CHECK_THROWS_AS(unimodal_certify(short_data), MalformedCertificate);
}

TEST_CASE("global minimum scan") {
  const RieszParams p8{8, 4.0};
  const ScanGrid grid{1e-3, 1e3, 2000, true};
  CHECK(global_min_scan({p8, RadialField::lennard_jones(5, 0.95, -6, -12), 1.0}, grid).min_at_one);
  CHECK_FALSE(global_min_scan({p8, RadialField::lennard_jones(1, 0.75, -6, -12), 1.0}, grid).min_at_one);
  for (double a : {1.35, 2.0, 4.0, 7.0}) {
    CHECK(global_min_scan({P10, RadialField::power(1, a), r_star(1, a)}, grid).min_at_one);
  }
}

TEST_CASE("verdicts are sound") {
  const std::vector<std::pair<RieszParams, RadialField>> cases = {
      {{8, 4.0}, RadialField::lennard_jones(5, 0.95, -6, -12)},
      {{8, 4.0}, RadialField::lennard_jones(1, 0.75, -6, -12)},
      {P10, RadialField::lennard_jones(1, 1, 3, 2)},
      {P10, RadialField::exponential(1, 1, 2)},
      {P10, RadialField::power_log(1, 2)},
      {P10, RadialField::power_sink(1, 2, 0.5)},
      {P10, RadialField::power(1, 1.3)},
      {{5, 1.5}, RadialField::power(1, 3)},
      {{6, 0.0}, RadialField::power(2, 2.5)}};
  int certified = 0;
  for (const auto& [p, f] : cases) {
    const SphereVerdict v = check_sphere(p, f);
    if (v.kind != VerdictKind::certified_sphere) continue;
    ++certified;
    bool found = false;
    for (const auto& rec : v.records) {
      if (rec.R != v.R) continue;
      found = true;
      CHECK(rec.conditions.all_pass());
      CHECK(rec.scan.min_at_one);
      bool some = false;
      for (const auto& c : rec.certificates) some = some || (c.holds && !c.heuristic);
      CHECK(some);
    }
    CHECK(found);
  }
  CHECK(certified >= 6);
}

TEST_CASE("scaling constants") {
  CHECK(rescale_maps({6, 0.0}, 0.5, 3.0, ScalingDirection::to_constrained, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  const double c = rescale_maps({8, 4.0}, 5, 4, ScalingDirection::to_constrained, 0.125);
  CHECK(c == doctest::Approx(std::pow(4 * 0.125 / 10, 1.0 / 8)).epsilon(1e-15));
  // pushing a measure with alpha-moment m by 1/c (c from to_free) gives unit moment
  const double alpha = 2.5;
  const std::vector<double> r{0.4, 1.1, 2.3}, w{0.3, 0.3, 0.4};
  double m = 0.0;
  for (int i = 0; i < 3; ++i) m += w[i] * std::pow(r[i], alpha);
  const double cf = rescale_maps({6, 1.0}, 1, alpha, ScalingDirection::to_free, m);
  double unit = 0.0;
  for (int i = 0; i < 3; ++i) unit += w[i] * std::pow(r[i] / cf, alpha);
  CHECK(unit == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(rescale_maps({6, 1.0}, 1, 2, ScalingDirection::to_constrained, -0.5), DomainError);
}
