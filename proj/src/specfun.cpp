#include "riesz/specfun.hpp"

#include <cfloat>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/special_functions/digamma.hpp>

#include "riesz/errors.hpp"
#include "riesz/quadrature.hpp"

namespace riesz {

namespace detail {

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

static int gamma_sign(double x) {
  if (x > 0.0) return 1;
  return (static_cast<long long>(std::floor(x)) % 2 == 0) ? 1 : -1;
}

double gamma_signed(double x) {
  if (is_nonpositive_integer(x)) throw DomainError("gamma: pole at " + std::to_string(x));
  return gamma_sign(x) * std::exp(std::lgamma(x));
}

double rgamma(double x) {
  if (is_nonpositive_integer(x)) return 0.0;
  return gamma_sign(x) * std::exp(-std::lgamma(x));
}

double digamma_any(double x) {
  if (is_nonpositive_integer(x)) throw DomainError("digamma: pole at " + std::to_string(x));
  return boost::math::digamma(x);
}

bool hyp2f1_terminates(double a, double b) {
  return is_nonpositive_integer(a) || is_nonpositive_integer(b);
}

int hyp2f1_blowup_sign(double a, double b, double c) {
  return gamma_sign(c) * gamma_sign(a) * gamma_sign(b);
}

}  // namespace detail

using detail::gamma_signed;
using detail::is_nonpositive_integer;
using detail::rgamma;

double ln_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("ln_gamma: x must be positive");
  return std::lgamma(x);
}

double digamma(double x) {
  if (!(x > 0.0)) throw DomainError("digamma: x must be positive");
  return boost::math::digamma(x);
}

namespace {

// Plain power series; stops after three consecutive terms below the
// tolerance, scaled by (1 - z) so the geometric tail is covered too.
double series_2f1(double a, double b, double c, double z, double rel_tol, long max_terms) {
  double term = 1.0;
  double sum = 1.0;
  const double tol = rel_tol * (1.0 - z);
  int small = 0;
  for (long n = 0; n < max_terms; ++n) {
    term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
    sum += term;
    if (std::abs(term) <= tol * std::abs(sum) || std::abs(term) < DBL_MIN) {
      if (++small >= 3) return sum;
    } else {
      small = 0;
    }
  }
  throw NoConvergence("hyp2f1: series did not converge");
}

double terminating_2f1(double a, double b, double c, double z) {
  const double n_max = is_nonpositive_integer(a) ? -a : -b;
  double term = 1.0;
  double sum = 1.0;
  for (long n = 0; n < static_cast<long>(n_max); ++n) {
    term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
    sum += term;
  }
  return sum;
}

double gauss_sum(double a, double b, double c) {
  // Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b))
  return gamma_signed(c) * gamma_signed(c - a - b) * rgamma(c - a) * rgamma(c - b);
}

// Non-integer sigma = c - a - b > 0, t = 1 - z small.
double connection_2f1(double a, double b, double c, double t, const SpecFunConfig& cfg) {
  const double sigma = c - a - b;
  const double A = gamma_signed(c) * gamma_signed(sigma) * rgamma(c - a) * rgamma(c - b);
  const double B = gamma_signed(c) * gamma_signed(-sigma) * rgamma(a) * rgamma(b);
  double out = 0.0;
  if (A != 0.0) {
    out += A * (detail::hyp2f1_terminates(a, b) ? terminating_2f1(a, b, 1.0 - sigma, t)
                                                 : series_2f1(a, b, 1.0 - sigma, t, cfg.rel_tol, cfg.max_terms));
  }
  if (B != 0.0) {
    const double ca = c - a, cb = c - b;
    const double s2 = detail::hyp2f1_terminates(ca, cb) ? terminating_2f1(ca, cb, 1.0 + sigma, t)
                                                        : series_2f1(ca, cb, 1.0 + sigma, t, cfg.rel_tol, cfg.max_terms);
    out += B * std::pow(t, sigma) * s2;
  }
  return out;
}

// Integer m = c - a - b >= 0, logarithmic connection formula; t = 1 - z.
double connection_2f1_integer(double a, double b, double c, int m, double t, const SpecFunConfig& cfg) {
  const double G = gamma_signed(c);
  double finite = 0.0;
  if (m > 0) {
    const double pre = G * rgamma(a + m) * rgamma(b + m);
    double poch = 1.0;  // (a)_k (b)_k / k!
    double fact = std::tgamma(static_cast<double>(m));  // (m-k-1)!
    double zpow = 1.0;  // (z-1)^k
    for (int k = 0; k < m; ++k) {
      finite += poch * fact * zpow;
      poch *= (a + k) * (b + k) / (k + 1.0);
      if (m - k - 1 > 0) fact /= (m - k - 1.0);
      zpow *= -t;
    }
    finite *= pre;
  }
  const double pre2 = -std::pow(-t, m) * G * rgamma(a) * rgamma(b);
  if (pre2 == 0.0) return finite;
  double coef = 1.0 / std::tgamma(m + 1.0);
  double psi1 = detail::digamma_any(1.0);
  double psi2 = detail::digamma_any(m + 1.0);
  double psi3 = detail::digamma_any(a + m);
  double psi4 = detail::digamma_any(b + m);
  const double logt = std::log(t);
  double sum = 0.0;
  int small = 0;
  for (int k = 0; k < cfg.max_terms; ++k) {
    const double term = coef * (logt - psi1 - psi2 + psi3 + psi4);
    sum += term;
    if (std::abs(term) <= cfg.rel_tol * std::abs(sum) || std::abs(term) < DBL_MIN) {
      if (++small >= 3) return finite + pre2 * sum;
    } else {
      small = 0;
    }
    coef *= (a + m + k) * (b + m + k) / ((k + 1.0) * (k + m + 1.0)) * t;
    psi1 += 1.0 / (k + 1.0);
    psi2 += 1.0 / (k + m + 1.0);
    psi3 += 1.0 / (a + m + k);
    psi4 += 1.0 / (b + m + k);
  }
  throw NoConvergence("hyp2f1: logarithmic connection series did not converge");
}

// Euler integral for c > b > 0.
double euler_2f1(double a, double b, double c, double z, const SpecFunConfig& cfg) {
  const double t = 1.0 - z;
  auto f = [&](double x, double xc) {
    const double u = xc < 0.0 ? -xc : x;
    const double one_minus_u = xc > 0.0 ? xc : 1.0 - x;
    return std::pow(u, b - 1.0) * std::pow(one_minus_u, c - b - 1.0) *
           std::pow(one_minus_u + u * t, -a);
  };
  const quad::TanhSinhResult q = quad::tanh_sinh(f, 0.0, 1.0, cfg.rel_tol);
  if (!(q.error <= std::max(100.0 * cfg.rel_tol, 1e-10) * q.l1)) {
    throw NoConvergence("hyp2f1: Euler integral did not reach tolerance");
  }
  return std::exp(std::lgamma(c) - std::lgamma(b) - std::lgamma(c - b)) * q.value;
}

constexpr double kNearUnity = 0.9;
constexpr double kNearIntegerGap = 1e-5;

double hyp2f1_impl(double a, double b, double c, double z, const SpecFunConfig& cfg) {
  if (z == 0.0) return 1.0;
  if (detail::hyp2f1_terminates(a, b)) return terminating_2f1(a, b, c, z);
  const double sigma = c - a - b;
  if (z == 1.0) {
    if (sigma > 0.0) return gauss_sum(a, b, c);
    throw DivergentAtOne("hyp2f1: divergent at z = 1 with c - a - b <= 0");
  }
  if (z < kNearUnity) return series_2f1(a, b, c, z, cfg.rel_tol, cfg.max_terms);
  const double t = 1.0 - z;
  if (sigma < 0.0) {
    // Euler transformation maps to c - a - b > 0.
    return std::pow(t, sigma) * hyp2f1_impl(c - a, c - b, c, z, cfg);
  }
  const double m = std::round(sigma);
  if (sigma == m) return connection_2f1_integer(a, b, c, static_cast<int>(m), t, cfg);
  if (std::abs(sigma - m) > kNearIntegerGap) return connection_2f1(a, b, c, t, cfg);
  if (c > b && b > 0.0) return euler_2f1(a, b, c, z, cfg);
  if (c > a && a > 0.0) return euler_2f1(b, a, c, z, cfg);
  return series_2f1(a, b, c, z, cfg.rel_tol, 1000L * cfg.max_terms);
}

}  // namespace

double hyp2f1(const Hyp2F1Args& args, const SpecFunConfig& cfg) {
  if (is_nonpositive_integer(args.c)) throw DomainError("hyp2f1: c is a non-positive integer");
  if (!(args.z >= 0.0 && args.z <= 1.0)) throw DomainError("hyp2f1: z must lie in [0,1]");
  if (!(cfg.rel_tol > 0.0) || cfg.max_terms < 64) throw DomainError("hyp2f1: invalid configuration");
  return hyp2f1_impl(args.a, args.b, args.c, args.z, cfg);
}

double hyp2f1(double a, double b, double c, double z, const SpecFunConfig& cfg) {
  return hyp2f1(Hyp2F1Args{a, b, c, z}, cfg);
}

double hyp3f2_log_kernel(int d, double z, const SpecFunConfig& cfg) {
  if (d < 2) throw DomainError("hyp3f2_log_kernel: d must be at least 2");
  if (!(z >= 0.0 && z <= 1.0)) throw DomainError("hyp3f2_log_kernel: z must lie in [0,1]");
  const double a0 = 0.5 * (d + 1);
  if (z == 0.0) return 1.0;
  if (z == 1.0) return 2.0 * (boost::math::digamma(d - 1.0) - boost::math::digamma(0.5 * (d - 1)));
  if (z < kNearUnity) {
    // term_n = (a0)_n / ((d)_n (n+1)) z^n
    double term = 1.0, sum = 1.0;
    const double tol = cfg.rel_tol * (1.0 - z);
    int small = 0;
    for (int n = 0; n < cfg.max_terms; ++n) {
      term *= (a0 + n) * (n + 1.0) / ((d + n) * (n + 2.0)) * z;
      sum += term;
      if (term <= tol * sum) {
        if (++small >= 3) return sum;
      } else {
        small = 0;
      }
    }
    throw NoConvergence("hyp3f2_log_kernel: series did not converge");
  }
  const double e = 0.5 * (d - 3);
  const double t = 1.0 - z;
  auto f = [&](double x, double xc) {
    const double u = xc < 0.0 ? -xc : x;
    const double one_minus_u = xc > 0.0 ? xc : 1.0 - x;
    return std::pow(u, e) * std::pow(one_minus_u, e) * std::log(one_minus_u + u * t);
  };
  const quad::TanhSinhResult q = quad::tanh_sinh(f, 0.0, 1.0, cfg.rel_tol);
  if (!(q.error <= std::max(100.0 * cfg.rel_tol, 1e-10) * q.l1)) {
    throw NoConvergence("hyp3f2_log_kernel: Euler integral did not reach tolerance");
  }
  const double val = q.value;
  const double pre = std::exp(std::lgamma(static_cast<double>(d)) - std::lgamma(a0) - std::lgamma(d - a0));
  return -pre * val / z;
}

}  // namespace riesz
