#pragma once

// Riesz kernel K_s(x) = 1/(s|x|^s) (s != 0), -log|x| (s = 0), and the
// potential/energy of the uniform measure sigma_R on the sphere of
// radius R. Profiles are written in lambda = |x|^2 / R^2.

namespace riesz {

struct RieszParams {
  int d;
  double s;
};

enum class Branch { inside, outside, at_one };

struct SphereEvalPoint {
  double lambda;
  Branch branch;
};

/// Branch implied by lambda.
SphereEvalPoint eval_point(double lambda);

/// Throws DomainError unless d >= 2 and -2 < s < d.
void validate(const RieszParams& p);

/// c_{s,d} = 2F1(s/2, (2+s-d)/2; d/2; 1), for -2 < s < d-1.
double c_sd(const RieszParams& p);

/// b_d = -log 2 + (1/2) psi(d-1) - (1/2) psi((d-1)/2).
double b_d(int d);

/// h^{(order)}(lambda). Order 0 needs s < d-1, order >= 1 needs s < d-2.
/// At lambda = 1 the finite limit exists for order < d-s-1; beyond that a
/// signed infinity is returned for a one-sided branch, and at_one throws
/// LimitUndefined when the one-sided limits disagree.
double h_eval(const RieszParams& p, const SphereEvalPoint& pt, int order);
double h_eval(const RieszParams& p, double lambda, int order);

/// Single-expression form in (1+sqrt(lambda)); order 0 only. Used for
/// cross-checks.
double h_eval_sqrt_form(const RieszParams& p, double lambda);

/// U_s^{sigma_R}(x) with |x| = x_norm.
double sphere_potential(const RieszParams& p, double x_norm, double R);

/// I_s(sigma_R).
double sphere_energy(const RieszParams& p, double R);

/// Mutual energy of sigma_a and sigma_b; symmetric in (a, b), and equal to
/// sphere_energy on the diagonal.
double sphere_mutual_energy(const RieszParams& p, double a, double b);

/// Potential of sigma_R by one-dimensional quadrature against the weight
/// (1-t^2)^{(d-3)/2}. Independent of the hypergeometric representation.
double funk_hecke_oracle(const RieszParams& p, double x_norm, double R, int nodes = 32);

}  // namespace riesz
