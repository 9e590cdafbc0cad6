#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "riesz/errors.hpp"
#include "riesz/specfun.hpp"
#include "riesz/sphere_kernel.hpp"

using namespace riesz;

namespace {

std::vector<double> s_values(int d) {
  std::vector<double> out;
  for (double s : {-1.5, -0.5, 0.0, 0.5, d - 2.0, d - 1.2}) {
    if (s > -2.0 && s < d - 1.0) out.push_back(s);
  }
  return out;
}

}  // namespace

TEST_CASE("c_sd spot values and window") {
  for (int d = 2; d <= 12; ++d) CHECK(c_sd({d, 0.0}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(c_sd({8, 4.0}) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(c_sd({10, 2.0}) == doctest::Approx(4.0 / 7.0).epsilon(1e-12));
  CHECK_THROWS_AS(c_sd({8, 7.0}), DomainError);
  CHECK_THROWS_AS(c_sd({8, -2.0}), DomainError);
}

TEST_CASE("c_sd equals the Gamma quotient and is convex in s") {
  for (int d = 3; d <= 12; ++d) {
    const int n = 60;
    std::vector<double> s(n), c(n);
    for (int i = 0; i < n; ++i) {
      s[i] = -2.0 + (d + 1.0) * (i + 1) / (n + 1);
      c[i] = c_sd({d, s[i]});
      const double want = oracle::gauss_sum(s[i] / 2, (2 + s[i] - d) / 2, d / 2.0);
      CHECK(oracle::rel_err(c[i], want) < 1e-10);
      CHECK(c[i] > 0.0);
      if (s[i] > 0.0 && s[i] < d - 2.0) CHECK(c[i] < 1.0);
    }
    for (int i = 1; i + 1 < n; ++i) CHECK(c[i - 1] - 2 * c[i] + c[i + 1] > 0.0);
  }
}

TEST_CASE("b_d closed forms") {
  CHECK(std::abs(b_d(2)) < 1e-12);
  CHECK(b_d(4) == doctest::Approx(-0.25).epsilon(1e-12));
  CHECK(b_d(3) == doctest::Approx(0.5 * (oracle::digamma(1.5) - oracle::digamma(2.0))).epsilon(1e-12));
  for (int d = 2; d <= 12; ++d) {
    const double alt = -std::log(2.0) + 0.5 * oracle::digamma(d - 1.0) - 0.5 * oracle::digamma(0.5 * (d - 1));
    CHECK(std::abs(b_d(d) - alt) < 1e-12);
  }
}

TEST_CASE("profile values at the origin and on the sphere") {
  for (int d : {3, 5, 8, 10}) {
    for (double s : {-1.0, 0.5, d - 2.5}) {
      const RieszParams p{d, s};
      const double c = c_sd(p);
      CHECK(h_eval(p, 0.0, 0) == doctest::Approx(1 / s).epsilon(1e-12));
      CHECK(h_eval(p, 1.0, 0) == doctest::Approx(c / s).epsilon(1e-10));
      CHECK(h_eval(p, 1.0, 1) == doctest::Approx(-c / 4).epsilon(1e-9));
    }
    const RieszParams p0{d, 0.0};
    CHECK(std::abs(h_eval(p0, 0.0, 0)) < 1e-14);
    CHECK(h_eval(p0, 1.0, 0) == doctest::Approx(b_d(d)).epsilon(1e-10));
  }
}

TEST_CASE("inside and outside forms meet at lambda = 1") {
  for (int d = 2; d <= 10; ++d) {
    for (double s : s_values(d)) {
      const RieszParams p{d, s};
      const double in = h_eval(p, SphereEvalPoint{1.0, Branch::inside}, 0);
      const double out = h_eval(p, SphereEvalPoint{1.0, Branch::outside}, 0);
      CHECK(std::abs(in - out) <= 1e-9 * std::max(1.0, std::abs(in)));
      for (double lam : {0.25, 1.0, 4.0}) {
        const double a = h_eval(p, lam, 0), b = h_eval_sqrt_form(p, lam);
        CHECK(std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)));
      }
    }
  }
}

TEST_CASE("derivative ladder by finite differences") {
  for (int d : {3, 4, 8, 10}) {
    for (double s : {-1.5, -0.5, 0.0, 0.5, d - 2.5}) {
      if (!(s < d - 2.0)) continue;
      const RieszParams p{d, s};
      for (double lam : {0.1, 0.5, 0.8, 1.3, 2.0, 6.0}) {
        for (int k = 1; k <= 3; ++k) {
          const double h = 1e-3 * std::min(lam, std::abs(lam - 1.0));
          const double fd = oracle::derivative([&](double x) { return h_eval(p, x, k - 1); }, lam, h);
          const double an = h_eval(p, lam, k);
          CHECK(std::abs(fd - an) <= 1e-6 * std::max(1.0, std::abs(an)));
        }
      }
    }
  }
}

TEST_CASE("blow-up at the sphere returns signed infinity") {
  // d = 4, s = 1.5: h'' diverges at 1 from inside (order 2 >= d - s - 1)
  const RieszParams p{4, 1.5};
  const double v = h_eval(p, SphereEvalPoint{1.0, Branch::inside}, 2);
  CHECK(std::isfinite(h_eval(p, SphereEvalPoint{1.0, Branch::inside}, 1)));
  CHECK(std::isinf(v));
  CHECK(!std::isnan(v));
}

TEST_CASE("potential of the sphere") {
  CHECK(sphere_potential({8, 4.0}, 0.0, 2.0) == doctest::Approx(std::pow(2.0, -4.0) / 4).epsilon(1e-13));
  CHECK(sphere_potential({6, 0.0}, 0.0, 3.0) == doctest::Approx(-std::log(3.0)).epsilon(1e-13));
  // Newton: constant Coulomb potential inside a sphere in R^3
  for (double x : {0.0, 0.25, 0.5, 0.9}) CHECK(sphere_potential({3, 1.0}, x, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(sphere_potential({8, 7.5}, 0.5, 1.0), DomainError);
}

TEST_CASE("sphere potential agrees with the Funk-Hecke quadrature") {
  for (int d : {2, 3, 8}) {
    for (double s : s_values(d)) {
      const RieszParams p{d, s};
      for (double lam : {0.0, 0.5, 0.99, 1.0, 1.01, 2.0, 10.0}) {
        const double x = std::sqrt(lam) * 1.3;
        const double got = sphere_potential(p, x, 1.3);
        const double want = funk_hecke_oracle(p, x, 1.3);
        const double tol = (lam == 1.0 && s > 0.0) ? 1e-6 : 1e-8;
        CHECK(std::abs(got - want) <= tol * std::max(1.0, std::abs(want)));
      }
    }
  }
  CHECK(funk_hecke_oracle({8, 4.0}, 1.0, 1.0) == doctest::Approx(0.125).epsilon(1e-6));
  CHECK(funk_hecke_oracle({5, 1.5}, 0.0, 2.0) == doctest::Approx(std::pow(2.0, -1.5) / 1.5).epsilon(1e-13));
}

TEST_CASE("sphere energy") {
  CHECK(sphere_energy({8, 4.0}, 1.0) == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(std::abs(sphere_energy({2, 0.0}, 1.0)) < 1e-12);
  for (double s : {-1.0, 0.7, 3.0}) {
    const RieszParams p{6, s};
    CHECK(sphere_energy(p, 2.0) == doctest::Approx(std::pow(2.0, -s) * sphere_energy(p, 1.0)).epsilon(1e-13));
  }
  CHECK(sphere_energy({6, 0.0}, 2.0) == doctest::Approx(b_d(6) - std::log(2.0)).epsilon(1e-13));
}

TEST_CASE("mutual energy is symmetric") {
  for (int d : {3, 6, 10}) {
    for (double s : {-1.2, 0.0, 0.8, d - 1.5}) {
      const RieszParams p{d, s};
      for (auto [a, b] : {std::pair{0.3, 1.7}, std::pair{1.0, 1.05}, std::pair{0.9, 4.0}}) {
        const double ab = sphere_mutual_energy(p, a, b), ba = sphere_mutual_energy(p, b, a);
        CHECK(std::abs(ab - ba) <= 1e-10 * std::max(1.0, std::abs(ab)));
        // equals the potential of sigma_b evaluated on the sphere of radius a
        CHECK(std::abs(ab - sphere_potential(p, a, b)) <= 1e-10 * std::max(1.0, std::abs(ab)));
      }
      CHECK(sphere_mutual_energy(p, 1.4, 1.4) == doctest::Approx(sphere_energy(p, 1.4)).epsilon(1e-12));
    }
  }
}
