#include "riesz/sphere_kernel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "riesz/errors.hpp"
#include "riesz/quadrature.hpp"
#include "riesz/specfun.hpp"

namespace riesz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double signed_inf(double sign) { return sign < 0.0 ? -kInf : kInf; }

// coef * 2F1(a,b;c;z), with the z -> 1 blow-up mapped to a signed infinity.
double scaled_hyp(double coef, double a, double b, double c, double z) {
  if (coef == 0.0) return 0.0;
  if (z >= 1.0 && !detail::hyp2f1_terminates(a, b) && c - a - b <= 0.0) {
    return signed_inf(coef * detail::hyp2f1_blowup_sign(a, b, c));
  }
  return coef * hyp2f1(a, b, c, std::min(z, 1.0));
}

double coef_inside(const RieszParams& p, int l) {
  const double s = p.s, d = p.d;
  double out = std::ldexp((2.0 + s - d) / d, -l);
  for (int j = 1; j < l; ++j) out *= (2.0 + 2.0 * j + s - d) * (s + 2.0 * j) / (d + 2.0 * j);
  return out;
}

double coef_outside(const RieszParams& p, int l) {
  double out = std::ldexp((l % 2 == 0) ? 1.0 : -1.0, -l);
  for (int j = 1; j < l; ++j) out *= (p.s + 2.0 * j);
  return out;
}

// Log-case profile on [0,1]: H(x) = (1/2) sum_{n>=1} (1-d/2)_n / ((d/2)_n n) x^n.
// H(1) = b_d and h_0(lambda) = H(lambda) inside, -log(lambda)/2 + H(1/lambda) outside.
double log_profile(int d, double x) {
  if (d == 2 || x == 0.0) return 0.0;
  if (x >= 1.0) return b_d(d);
  const double b0 = 1.0 - 0.5 * d;
  const double c = 0.5 * d;
  if (d % 2 == 0 || x <= 0.5) {
    double u = 1.0, sum = 0.0;
    for (int n = 1; n < 100000; ++n) {
      u *= (b0 + n - 1.0) / (c + n - 1.0) * x;
      if (u == 0.0) break;
      const double term = u / n;
      sum += term;
      if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return 0.5 * sum;
  }
  // H(x) = b_d - int_x^1 H'(t) dt, H' = -(d-2)/(2d) 2F1(1, 2-d/2; d/2+1; t).
  const double k = -(d - 2.0) / (2.0 * d);
  auto integrand = [&](double t, double tc) {
    const double z = tc > 0.0 ? 1.0 - tc : t;
    return k * hyp2f1(1.0, 2.0 - 0.5 * d, 0.5 * d + 1.0, z);
  };
  const quad::TanhSinhResult q = quad::tanh_sinh(integrand, x, 1.0, 1e-13);
  if (!(q.error <= 1e-11 * std::max(q.l1, 1e-300))) {
    throw NoConvergence("log profile: quadrature did not reach tolerance");
  }
  return b_d(d) - q.value;
}

double h_inside(const RieszParams& p, double lambda, int order) {
  const double s = p.s, d = p.d;
  if (order == 0) {
    if (s == 0.0) return log_profile(p.d, lambda);
    return scaled_hyp(1.0 / s, 0.5 * s, 0.5 * (s - d) + 1.0, 0.5 * d, lambda);
  }
  return scaled_hyp(coef_inside(p, order), 0.5 * s + order, 0.5 * (2.0 + s - d) + order, 0.5 * d + order,
                    lambda);
}

double h_outside(const RieszParams& p, double lambda, int order) {
  const double s = p.s, d = p.d;
  const double z = 1.0 / lambda;
  if (order == 0) {
    if (s == 0.0) return -0.5 * std::log(lambda) + log_profile(p.d, z);
    return scaled_hyp(std::pow(lambda, -0.5 * s) / s, 0.5 * s, 0.5 * (s - d) + 1.0, 0.5 * d, z);
  }
  const double coef = coef_outside(p, order) * std::pow(lambda, -0.5 * s - order);
  return scaled_hyp(coef, 0.5 * s + order, 0.5 * (2.0 + s - d), 0.5 * d, z);
}

}  // namespace

SphereEvalPoint eval_point(double lambda) {
  if (lambda < 1.0) return {lambda, Branch::inside};
  if (lambda > 1.0) return {lambda, Branch::outside};
  return {lambda, Branch::at_one};
}

void validate(const RieszParams& p) {
  if (p.d < 2) throw DomainError("dimension d must be at least 2");
  if (!(p.s > -2.0 && p.s < p.d)) throw DomainError("s must satisfy -2 < s < d");
}

double c_sd(const RieszParams& p) {
  validate(p);
  const double s = p.s, d = p.d;
  if (!(s < d - 1.0)) throw DomainError("c_sd requires s < d - 1");
  const double val = std::exp(ln_gamma(0.5 * d) + ln_gamma(d - s - 1.0) - ln_gamma(0.5 * (d - s)) -
                              ln_gamma(d - 0.5 * s - 1.0));
  const double check = hyp2f1(0.5 * s, 0.5 * (2.0 + s - d), 0.5 * d, 1.0);
  if (std::abs(val - check) > 1e-10 * std::abs(val)) {
    throw NoConvergence("c_sd: Gamma quotient and 2F1 at one disagree");
  }
  return val;
}

double b_d(int d) {
  if (d < 2) throw DomainError("b_d requires d >= 2");
  const double val = -std::numbers::ln2 + 0.5 * digamma(d - 1.0) - 0.5 * digamma(0.5 * (d - 1));
  const double check = 0.5 * (digamma(0.5 * d) - digamma(d - 1.0));
  if (std::abs(val - check) > 1e-12) throw NoConvergence("b_d: digamma forms disagree");
  return val;
}

double h_eval(const RieszParams& p, const SphereEvalPoint& pt, int order) {
  validate(p);
  if (order < 0) throw DomainError("h_eval: negative order");
  if (order == 0 && !(p.s < p.d - 1.0)) throw DomainError("h requires s < d - 1");
  if (order >= 1 && !(p.s < p.d - 2.0)) throw DomainError("derivatives of h require s < d - 2");
  const double lambda = pt.lambda;
  if (!(lambda >= 0.0) || std::isinf(lambda)) throw DomainError("h_eval: lambda must be finite and >= 0");
  switch (pt.branch) {
    case Branch::inside:
      if (lambda > 1.0) throw DomainError("h_eval: inside branch needs lambda <= 1");
      return h_inside(p, lambda, order);
    case Branch::outside:
      if (lambda < 1.0) throw DomainError("h_eval: outside branch needs lambda >= 1");
      return h_outside(p, lambda, order);
    case Branch::at_one:
      break;
  }
  if (lambda != 1.0) throw DomainError("h_eval: at_one branch needs lambda == 1");
  const double in = h_inside(p, 1.0, order);
  if (order < p.d - p.s - 1.0) return in;
  const double out = h_outside(p, 1.0, order);
  if (in == out) return in;
  throw LimitUndefined("h_eval: one-sided limits at lambda = 1 differ");
}

double h_eval(const RieszParams& p, double lambda, int order) { return h_eval(p, eval_point(lambda), order); }

double h_eval_sqrt_form(const RieszParams& p, double lambda) {
  validate(p);
  if (!(p.s < p.d - 1.0)) throw DomainError("h requires s < d - 1");
  if (!(lambda >= 0.0)) throw DomainError("lambda must be >= 0");
  const double r = std::sqrt(lambda);
  const double w = std::min(1.0, 4.0 * r / ((1.0 + r) * (1.0 + r)));
  if (p.s == 0.0) {
    return -std::log1p(r) + r / ((1.0 + r) * (1.0 + r)) * hyp3f2_log_kernel(p.d, w);
  }
  return std::pow(1.0 + r, -p.s) / p.s * hyp2f1(0.5 * p.s, 0.5 * (p.d - 1), p.d - 1.0, w);
}

double sphere_potential(const RieszParams& p, double x_norm, double R) {
  validate(p);
  if (!(p.s < p.d - 1.0)) throw DomainError("sphere_potential requires s < d - 1");
  if (!(R > 0.0) || !(x_norm >= 0.0)) throw DomainError("sphere_potential: need R > 0, |x| >= 0");
  const double rho = x_norm / R;
  const double h = h_eval(p, rho * rho, 0);
  return p.s == 0.0 ? -std::log(R) + h : std::pow(R, -p.s) * h;
}

double sphere_energy(const RieszParams& p, double R) {
  validate(p);
  if (!(p.s < p.d - 1.0)) throw DomainError("sphere_energy requires s < d - 1");
  if (!(R > 0.0)) throw DomainError("sphere_energy: R must be positive");
  if (p.s == 0.0) return -std::log(R) + b_d(p.d);
  return std::pow(R, -p.s) * c_sd(p) / p.s;
}

double sphere_mutual_energy(const RieszParams& p, double a, double b) {
  if (a == b) return sphere_energy(p, a);
  return sphere_potential(p, a, b);
}

namespace {

// tau_{d-1} times the integral of p(t)(1-t^2)^{(d-3)/2} over [-1,1].
// Left half by Gauss-Jacobi in t, right half in u with t = 1 - u^2.
struct FunkHeckeSum {
  double value;
  double magnitude;
};

FunkHeckeSum funk_hecke_once(const RieszParams& p, double rho, double R, int n) {
  const int d = p.d;
  const double s = p.s;
  const double a = 0.5 * (d - 3);
  const double logR = std::log(R);
  const double Rs = std::pow(R, -s);
  // base = 1 + rho^2 - 2 rho t, written to avoid cancellation
  auto kernel = [&](double base) { return s == 0.0 ? -logR - 0.5 * std::log(base) : Rs * std::pow(base, -0.5 * s) / s; };

  double total = 0.0, mag = 0.0;
  {
    const quad::Rule r = quad::gauss_jacobi(n, 0.0, a);
    for (std::size_t i = 0; i < r.x.size(); ++i) {
      const double t = 0.5 * (r.x[i] - 1.0);
      const double base = (1.0 - rho) * (1.0 - rho) + 2.0 * rho * (1.0 - t);
      const double v = r.w[i] * std::pow(0.5 * (3.0 - r.x[i]), a) * std::pow(2.0, -a) * 0.5 * kernel(base);
      total += v;
      mag += std::abs(v);
    }
  }
  if (rho == 1.0 && s != 0.0) {
    // p(1-u^2) = R^{-s} 2^{-s/2} u^{-s} / s; fold u^{d-2-s} into the weight.
    const double beta = d - 2.0 - s;
    const quad::Rule r = quad::gauss_jacobi(n, 0.0, beta);
    const double pre = 2.0 * Rs * std::pow(2.0, -0.5 * s) / s * std::pow(2.0, -beta) * 0.5;
    for (std::size_t i = 0; i < r.x.size(); ++i) {
      const double u = 0.5 * (1.0 + r.x[i]);
      const double v = pre * r.w[i] * std::pow(2.0 - u * u, a);
      total += v;
      mag += std::abs(v);
    }
  } else {
    const quad::Rule gl = quad::gauss_legendre(n);
    const double delta = rho == 1.0 ? 0.0 : std::abs(1.0 - rho) / std::sqrt(2.0 * rho);
    const double u_min = delta > 0.0 ? 1e-3 * std::min(1.0, delta) : 1e-18;
    auto panel = [&](double lo, double hi) {
      const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
      for (std::size_t i = 0; i < gl.x.size(); ++i) {
        const double u = mid + half * gl.x[i];
        const double base = (1.0 - rho) * (1.0 - rho) + 2.0 * rho * u * u;
        const double v = half * gl.w[i] * 2.0 * std::pow(u, d - 2) * std::pow(2.0 - u * u, a) * kernel(base);
        total += v;
        mag += std::abs(v);
      }
    };
    double hi = 1.0;
    while (hi > u_min) {
      panel(0.5 * hi, hi);
      hi *= 0.5;
    }
    panel(0.0, hi);
  }
  const double tau = std::exp(std::lgamma(0.5 * d) - std::lgamma(0.5) - std::lgamma(0.5 * (d - 1)));
  return {tau * total, tau * mag};
}

}  // namespace

double funk_hecke_oracle(const RieszParams& p, double x_norm, double R, int nodes) {
  validate(p);
  if (!(p.s < p.d - 1.0)) throw DomainError("funk_hecke_oracle requires s < d - 1");
  if (nodes < 16) throw DomainError("funk_hecke_oracle: nodes must be at least 16");
  if (!(R > 0.0) || !(x_norm >= 0.0)) throw DomainError("funk_hecke_oracle: need R > 0, |x| >= 0");
  if (x_norm == 0.0) return p.s == 0.0 ? -std::log(R) : std::pow(R, -p.s) / p.s;
  const double rho = x_norm / R;
  constexpr int kMaxNodes = 128;
  FunkHeckeSum prev = funk_hecke_once(p, rho, R, nodes);
  double err = 0.0;
  for (int n = 2 * nodes; n <= kMaxNodes; n *= 2) {
    const FunkHeckeSum next = funk_hecke_once(p, rho, R, n);
    err = std::abs(next.value - prev.value);
    prev = next;
    if (err <= 1e-12 * prev.magnitude) return prev.value;
  }
  if (err > 1e-8 * prev.magnitude) {
    throw QuadratureFailure("funk_hecke_oracle: error estimate " + std::to_string(err) + " above tolerance");
  }
  return prev.value;
}

}  // namespace riesz
