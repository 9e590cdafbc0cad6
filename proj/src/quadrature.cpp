#include "riesz/quadrature.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "riesz/errors.hpp"

namespace riesz::quad {

namespace {

// Golub-Welsch eigenvalues of the Jacobi matrix as starting points.
std::vector<double> jacobi_matrix_nodes(int n, double alpha, double beta) {
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(n > 1 ? n - 1 : 1);
  const double ab = alpha + beta;
  for (int k = 0; k < n; ++k) {
    const double t = 2.0 * k + ab;
    diag[k] = (k == 0 && std::abs(ab + 2.0) > 0.0) ? (beta - alpha) / (ab + 2.0)
                                                   : (beta * beta - alpha * alpha) / (t * (t + 2.0));
  }
  for (int k = 1; k < n; ++k) {
    const double t = 2.0 * k + ab;
    // for k = 1 the factor (k + ab) / (t - 1) equals one
    const double ratio = (k == 1) ? 1.0 : (k + ab) / (t - 1.0);
    sub[k - 1] = std::sqrt(4.0 * k * (k + alpha) * (k + beta) * ratio / (t * t * (t + 1.0)));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::EigenvaluesOnly);
  std::vector<double> out(n);
  for (int k = 0; k < n; ++k) out[k] = es.eigenvalues()[k];
  return out;
}

}  // namespace

Rule gauss_jacobi(int n, double alpha, double beta) {
  if (n < 1) throw DomainError("gauss_jacobi: n must be positive");
  if (!(alpha > -1.0 && beta > -1.0)) throw DomainError("gauss_jacobi: exponents must exceed -1");
  Rule r;
  r.x.resize(n);
  r.w.resize(n);
  const double ab = alpha + beta;
  if (n == 1) {
    r.x[0] = (beta - alpha) / (ab + 2.0);
    r.w[0] = std::exp((ab + 1.0) * std::numbers::ln2 + std::lgamma(alpha + 1.0) + std::lgamma(beta + 1.0) -
                      std::lgamma(ab + 2.0));
    return r;
  }
  const std::vector<double> guess = jacobi_matrix_nodes(n, alpha, beta);
  const double lnorm = std::lgamma(alpha + n) + std::lgamma(beta + n) - std::lgamma(n + 1.0) -
                       std::lgamma(n + ab + 1.0) + ab * std::numbers::ln2;
  for (int i = 0; i < n; ++i) {
    double z = guess[i];
    double p1 = 0.0, p2 = 0.0, pp = 0.0, temp = 0.0;
    for (int it = 0; it < 12; ++it) {
      temp = 2.0 + ab;
      p1 = (alpha - beta + temp * z) / 2.0;
      p2 = 1.0;
      for (int j = 2; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        temp = 2.0 * j + ab;
        const double a = 2.0 * j * (j + ab) * (temp - 2.0);
        const double b = (temp - 1.0) * (alpha * alpha - beta * beta + temp * (temp - 2.0) * z);
        const double c = 2.0 * (j - 1.0 + alpha) * (j - 1.0 + beta) * temp;
        p1 = (b * p2 - c * p3) / a;
      }
      pp = (n * (alpha - beta - temp * z) * p1 + 2.0 * (n + alpha) * (n + beta) * p2) / (temp * (1.0 - z * z));
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) <= 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    r.x[i] = z;
    r.w[i] = std::exp(lnorm) * temp / (pp * p2);
  }
  return r;
}

Rule gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

TanhSinhResult tanh_sinh(const std::function<double(double, double)>& f, double a, double b, double tol) {
  thread_local boost::math::quadrature::tanh_sinh<double> rule(15);
  TanhSinhResult out{0.0, 0.0, 0.0};
  out.value = rule.integrate(f, a, b, tol, &out.error, &out.l1);
  return out;
}

}  // namespace riesz::quad
