#pragma once

#include <functional>
#include <vector>

namespace riesz::quad {

struct Rule {
  std::vector<double> x;
  std::vector<double> w;
};

/// Gauss-Legendre rule on [-1, 1].
Rule gauss_legendre(int n);

/// Gauss-Jacobi rule on [-1, 1] for the weight (1-x)^alpha (1+x)^beta,
/// alpha, beta > -1.
Rule gauss_jacobi(int n, double alpha, double beta);

/// Tanh-sinh rule on [a, b]. The integrand receives (x, xc) where xc is
/// a - x (negative) in the left half and b - x (positive) in the right
/// half, so endpoint distances are exact.
struct TanhSinhResult {
  double value;
  double error;
  double l1;
};
TanhSinhResult tanh_sinh(const std::function<double(double, double)>& f, double a, double b,
                         double tol);

}  // namespace riesz::quad
