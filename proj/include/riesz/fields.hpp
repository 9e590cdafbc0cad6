#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "riesz/sphere_kernel.hpp"

namespace riesz {

enum class FieldType { power, lennard_jones, exponential, power_log, power_sink };

// Radial external field V(x) = v(rho), rho = |x|^2.
//   power          (gamma/alpha) rho^{alpha/2}
//   lennard_jones  (gamma/alpha) rho^{alpha/2} - (gamma eta/beta) rho^{beta/2}
//   exponential    (gamma/(alpha beta)) exp(alpha rho^{beta/2})
//   power_log      gamma rho^{alpha/2} log rho
//   power_sink     (gamma/alpha) |rho - R0^2|^{alpha/2}
struct RadialField {
  FieldType type = FieldType::power;
  double gamma = 1.0;
  double alpha = 2.0;
  double beta = 0.0;
  double eta = 0.0;
  double R0 = 0.0;
  int smoothness_order = 64;

  static RadialField power(double gamma, double alpha);
  static RadialField lennard_jones(double gamma, double eta, double alpha, double beta);
  static RadialField exponential(double gamma, double alpha, double beta);
  static RadialField power_log(double gamma, double alpha);
  static RadialField power_sink(double gamma, double alpha, double R0);
};

/// Throws DomainError when the parameters leave v unbounded below or undefined.
void validate(const RadialField& f);

std::string type_name(FieldType t);

/// Parses {"type": ..., parameters...}; unknown or missing keys throw DomainError.
RadialField field_from_json(const nlohmann::json& j);
nlohmann::json field_to_json(const RadialField& f);

/// v^{(order)}(rho); rho = 0 returns the one-sided limit (possibly infinite).
double field_eval(const RadialField& f, double rho, int order);

/// q^{(order)}(kappa) with q(kappa) = 2 R^{s+2} kappa^{-s/2-1} v'(R^2/kappa).
/// kappa = 0 is available for order 0 as a limit.
double q_eval(const RadialField& f, const RieszParams& p, double R, double kappa, int order);

// c rho^q (log rho)^m
struct Monomial {
  double coef;
  double exponent;
  int log_power;
};

// Asymptotic description of an expression as its variable tends to infinity.
// Either a finite sum of monomials, or dominated by exp(+...) with a sign.
struct Asymptotic {
  std::vector<Monomial> terms;
  int exp_dominant_sign = 0;
};

/// Limit of the expansion as the variable tends to infinity.
double limit_at_infinity(const Asymptotic& a);

/// Expansion of v^{(order)}(rho) as rho -> infinity.
Asymptotic expansion_at_infinity(const RadialField& f, int order);

/// Same expansion written in r = sqrt(rho).
Asymptotic expansion_in_radius(const RadialField& f);

struct FieldLimits {
  double v_at_zero;
  double v_at_infinity;
  Asymptotic tail;  // v(r^2) as r -> infinity, in r
};

FieldLimits field_limits(const RadialField& f);

enum class ConfinementClause { a, b, c };

struct ConfinementReport {
  bool satisfied;
  ConfinementClause clause;
  std::string detail;
};

ConfinementReport confinement_check(const RadialField& f, const RieszParams& p);

// Sign of E(rho) = a0 v^{(k)}(rho) + a1 rho v^{(k+1)}(rho) on [lo, hi]
// (hi may be +infinity). Decided in closed form when the expression is a
// monotone function of a single variable; otherwise sampled at 1000
// log-spaced points and flagged heuristic.
struct SignCheck {
  bool holds;
  bool heuristic;
  std::string method;
};

SignCheck check_sign(const RadialField& f, int k, double a0, double a1, double lo, double hi, int want_sign);

}  // namespace riesz
