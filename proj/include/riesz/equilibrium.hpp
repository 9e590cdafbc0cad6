#pragma once

#include <string>
#include <vector>

#include "riesz/fields.hpp"
#include "riesz/sphere_kernel.hpp"

namespace riesz {

struct ModifiedPotentialCtx {
  RieszParams params;
  RadialField field;
  double R;
};

/// f^{(order)}(lambda) = R^{-s} h^{(order)}(lambda) + R^{2 order} v^{(order)}(R^2 lambda),
/// plus -log R at order 0 when s = 0.
double f_eval(const ModifiedPotentialCtx& ctx, const SphereEvalPoint& pt, int order);
double f_eval(const ModifiedPotentialCtx& ctx, double lambda, int order);

/// lim_{lambda -> infinity} f(lambda), from symbolic tails.
double f_limit_at_infinity(const ModifiedPotentialCtx& ctx);

/// y^{(order)}(kappa), y(kappa) = -2F1(s/2+1, (2+s-d)/2; d/2; kappa).
double y_eval(const RieszParams& p, double kappa, int order);

/// g = y + q on [0, 1]. At kappa = 1 the one-sided limit is returned,
/// signed infinity once it diverges.
double g_eval(const ModifiedPotentialCtx& ctx, double kappa, int order);

/// R^{s+2} v'(R^2) - c_{s,d}/4.
double stationarity_residual(const RieszParams& p, const RadialField& f, double R);

struct RadiusSearch {
  double R_min = 1e-4;
  double R_max = 1e4;
  int grid_n = 4000;
};

struct StationaryRadii {
  std::vector<double> radii;
  bool closed_form = false;
  // The residual is still shrinking toward an end of the bracket.
  bool boundary_warning = false;
};

/// Sign-change roots of the stationarity residual, refined to 1e-12 in R.
/// Tangential roots are not detected.
StationaryRadii stationary_radii(const RieszParams& p, const RadialField& f, const RadiusSearch& search = {});

struct ResidualCheck {
  double residual = 0.0;
  bool pass = false;
};

struct Comparison {
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

struct ConditionReport {
  ResidualCheck cond_i;
  Comparison cond_ii;   // lhs >= rhs
  Comparison cond_iii;  // lhs >= rhs
  Comparison cond_iv;   // lhs <= rhs
  bool all_pass() const;
  /// "i".."iv" for the first failing condition, empty when all pass.
  std::string first_failure() const;
};

/// Needs -2 < s < d-3.
ConditionReport necessary_report(const ModifiedPotentialCtx& ctx);

double alpha_threshold(const RieszParams& p);

/// R_* = (c_{s,d} / (2 gamma))^{1/(alpha+s)}.
double power_law_radius(const RieszParams& p, double gamma, double alpha);

/// I_{s,V}(sigma_{R_*}) in closed form.
double power_law_energy(const RieszParams& p, double gamma, double alpha);

/// I_{s,V}(sigma_R) = I_s(sigma_R) + 2 v(R^2).
double sphere_field_energy(const RieszParams& p, const RadialField& f, double R);

enum class Certificate {
  global_convexity,            // v'' >= 0 on [0, inf), -2 < s <= d-4
  convex_inside,               // v'' >= 0 on [0, R^2]
  convex_outside,              // v'' >= 0 on [R^2, inf)
  inside_higher_derivative,    // d-4 < s < d-3, v^{(k)} <= 0 inside, f^{(l)}(0) <= 0
  outside_derivative_ladder,   // -2 < s < d-4, v^{(k)} >= 0 outside, f^{(l)}(1) >= 0
  outside_weighted_convexity,  // d-4 < s < d-3, lambda^{s/2+2} v''(R^2 lambda) increasing
  lj_unit_sphere,              // Lennard-Jones with R = 1, alpha = -2-s
  ladder_inside,               // f half-monotone at 1 on [0, 1]
  ladder_outside,              // -g half-monotone of order (1, k) at 1
  power_law_threshold,         // power law with alpha >= alpha_{s,d}
};

enum class Coverage { whole, inside, outside };

std::string certificate_name(Certificate c);
std::string coverage_name(Coverage c);
const std::vector<Certificate>& all_certificates();

struct Inequality {
  std::string label;
  double lhs;
  double rhs;
  bool holds;
};

struct CertificateResult {
  Certificate which;
  Coverage coverage;
  bool holds = false;
  // Some global sign hypothesis was only sampled; never certifies.
  bool heuristic = false;
  std::vector<Inequality> evidence{};
  std::string note{};
};

/// Throws WrongWindow when (s, d) lies outside the selector's range.
CertificateResult sufficient_certify(const ModifiedPotentialCtx& ctx, Certificate which);

struct UnimodalCertificate {
  int k0 = 1;
  int k = 1;
  // sign of (-1)^l phi^{(l)}(1), l = 1..k
  std::vector<int> endpoint_sign_data;
  bool global_kth_sign_ok = false;
  bool strict = false;
};

struct UnimodalResult {
  bool unimodal = false;
  bool increasing = false;
  bool not_increasing_whole = false;
};

/// Throws MalformedCertificate when the data do not have the order-(k0, k) shape.
UnimodalResult unimodal_certify(const UnimodalCertificate& cert);

struct ScanGrid {
  double lambda_min = 1e-3;
  double lambda_max = 1e3;
  int n = 2000;
  bool log_spaced = true;
};

struct ScanResult {
  double argmin = 1.0;
  double min_value = 0.0;
  double f_at_one = 0.0;
  double f_at_zero = 0.0;
  double f_at_infinity = 0.0;
  bool min_at_one = false;
  // min over samples and endpoint limits of f - f(1)
  double margin = 0.0;
};

/// Dense sampling of f. Evidence only, never a certificate by itself.
ScanResult global_min_scan(const ModifiedPotentialCtx& ctx, const ScanGrid& grid = {});

enum class VerdictKind { certified_sphere, necessary_fail, inconclusive };

std::string verdict_name(VerdictKind k);

struct RadiusRecord {
  double R = 0.0;
  bool checked = false;
  ConditionReport conditions;
  std::vector<CertificateResult> certificates;
  ScanResult scan;
  bool certified = false;
  std::string certificate;
  std::vector<std::string> notes;
};

struct SphereVerdict {
  std::vector<double> radii;
  bool boundary_warning = false;
  std::vector<RadiusRecord> records;
  VerdictKind kind = VerdictKind::inconclusive;
  double R = 0.0;  // NaN when no stationary radius exists
  std::string certificate;
  std::string failed_condition;
  std::vector<std::string> notes;
};

SphereVerdict check_sphere(const RieszParams& p, const RadialField& f, const RadiusSearch& search = {},
                           const ScanGrid& grid = {});

struct PowerLawVerdict {
  SphereVerdict verdict;
  double R_star = 0.0;
  double energy = 0.0;
  double alpha_threshold = 0.0;
};

/// Needs -2 < s < d-3 and alpha > max(-s, 0).
PowerLawVerdict power_law_verdict(const RieszParams& p, double gamma, double alpha);

enum class ScalingDirection {
  to_constrained,  // datum: I_s of the unit-moment minimizer; returns c with mu = (c Id)#nu
  to_free,         // datum: alpha-moment of the free minimizer; returns c with nu = (c^{-1} Id)#mu
};

/// Pushforward scale linking the free and moment-constrained problems for
/// V = (gamma/alpha)|x|^alpha. For s = 0, to_constrained returns the
/// optimizer (1/(2 gamma))^{1/alpha} of -log c + (2 gamma/alpha) c^alpha.
double rescale_maps(const RieszParams& p, double gamma, double alpha, ScalingDirection dir, double datum);

}  // namespace riesz
