#pragma once

// Scalar special functions on the real line: log-gamma, digamma,
// Gauss 2F1 on [0,1] and the 3F2(1,1,(d+1)/2; 2,d; z) kernel of the
// logarithmic sphere potential.

namespace riesz {

struct SpecFunConfig {
  double rel_tol = 1e-12;
  int max_terms = 10000;
  int quad_nodes = 256;
};

struct Hyp2F1Args {
  double a;
  double b;
  double c;
  double z;
};

/// log Gamma(x) for x > 0.
double ln_gamma(double x);

/// psi_0(x) for x > 0.
double digamma(double x);

/// 2F1(a,b;c;z) for z in [0,1].
/// Throws DivergentAtOne when z == 1 and c - a - b <= 0.
double hyp2f1(const Hyp2F1Args& args, const SpecFunConfig& cfg = {});
double hyp2f1(double a, double b, double c, double z, const SpecFunConfig& cfg = {});

/// 3F2(1, 1, (d+1)/2; 2, d; z) for d >= 2, z in [0,1].
double hyp3f2_log_kernel(int d, double z, const SpecFunConfig& cfg = {});

namespace detail {

bool is_nonpositive_integer(double x);

/// Gamma(x) with sign, for x not a pole.
double gamma_signed(double x);

/// 1/Gamma(x); zero at the poles.
double rgamma(double x);

/// psi_0 on the whole real line away from the poles.
double digamma_any(double x);

/// Sign of lim_{z->1-} 2F1(a,b;c;z) when c - a - b <= 0 and the series
/// does not terminate. Returns +1 or -1.
int hyp2f1_blowup_sign(double a, double b, double c);

/// True when 2F1(a,b;c;.) is a polynomial.
bool hyp2f1_terminates(double a, double b);

}  // namespace detail

}  // namespace riesz
