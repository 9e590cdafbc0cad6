#include "riesz/equilibrium.hpp"

#include <algorithm>
#include <iterator>
#include <cmath>
#include <limits>

#include "riesz/errors.hpp"
#include "riesz/specfun.hpp"

namespace riesz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double signed_inf(double sign) { return sign < 0.0 ? -kInf : kInf; }

int sign_with_tol(double x, double scale) {
  if (std::abs(x) <= 1e-12 * scale) return 0;
  return x > 0.0 ? 1 : -1;
}

double falling(double x, int n) {
  double out = 1.0;
  for (int i = 0; i < n; ++i) out *= (x - i);
  return out;
}

// Extended-real sum; opposite infinities have no value.
double ext_add(double a, double b) {
  const double out = a + b;
  if (std::isnan(out) && !std::isnan(a) && !std::isnan(b)) throw LimitUndefined("opposite infinite parts");
  return out;
}

// coef * 2F1(a,b;c;z) with the z -> 1 blow-up mapped to a signed infinity.
double scaled_hyp(double coef, double a, double b, double c, double z) {
  if (coef == 0.0) return 0.0;
  if (z >= 1.0 && !detail::hyp2f1_terminates(a, b) && c - a - b <= 0.0) {
    return signed_inf(coef * detail::hyp2f1_blowup_sign(a, b, c));
  }
  return coef * hyp2f1(a, b, c, std::min(z, 1.0));
}

double y_coef(const RieszParams& p, int l) {
  const double s = p.s, d = p.d;
  double out = -std::ldexp(1.0, -l);
  for (int j = 0; j < l; ++j) out *= (2.0 + 2.0 * j + s - d) * (s + 2.0 * j + 2.0) / (d + 2.0 * j);
  return out;
}

double tol_scale(double x) { return 1e-12 * std::max(1.0, std::abs(x)); }

bool ge_tol(double lhs, double rhs) {
  if (std::isinf(lhs) || std::isinf(rhs)) return lhs >= rhs;
  return lhs >= rhs - tol_scale(rhs);
}

bool le_tol(double lhs, double rhs) { return ge_tol(rhs, lhs); }

void check_ctx(const ModifiedPotentialCtx& ctx) {
  validate(ctx.params);
  validate(ctx.field);
  if (!(ctx.R > 0.0) || std::isinf(ctx.R)) throw DomainError("R must be positive and finite");
}

void require(bool in_window, const char* what) {
  if (!in_window) throw WrongWindow(what);
}

// Expansion of R^{-s} h(|x|^2/R^2) (plus -log R when s = 0) in r = |x|, r -> infinity.
Asymptotic potential_tail(const RieszParams& p, double R) {
  Asymptotic a;
  const double s = p.s, d = p.d;
  if (s == 0.0) {
    a.terms.push_back({-1.0, 0.0, 1});
    return a;
  }
  const int n_max = static_cast<int>(std::ceil(std::max(0.0, -s) / 2.0)) + 1;
  double t = 1.0;
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0) t *= (0.5 * s + n - 1.0) * (0.5 * (s - d) + n) / ((0.5 * d + n - 1.0) * n);
    if (t != 0.0) a.terms.push_back({t * std::pow(R, 2.0 * n) / s, -s - 2.0 * n, 0});
  }
  return a;
}

Asymptotic concat(Asymptotic a, const Asymptotic& b) {
  a.terms.insert(a.terms.end(), b.terms.begin(), b.terms.end());
  if (b.exp_dominant_sign != 0) a.exp_dominant_sign = b.exp_dominant_sign;
  return a;
}

// Sign of (-1)^k ... style hypotheses on q^{(k)} over (0, 1].
// For Lennard-Jones and power fields q is a sum of at most two powers of kappa.
SignCheck q_sign(const ModifiedPotentialCtx& ctx, int k, int want) {
  const RadialField& f = ctx.field;
  const double s = ctx.params.s, R = ctx.R;
  if (f.type == FieldType::power || f.type == FieldType::lennard_jones) {
    struct Term {
      double coef, exponent;
    };
    std::vector<Term> terms;
    auto add = [&](double c, double q) {
      // v' term c q rho^{q-1} maps to C kappa^{-s/2-q}
      const double C = 2.0 * std::pow(R, s + 2.0) * c * q * std::pow(R, 2.0 * (q - 1.0));
      const double e = -0.5 * s - q;
      const double A = C * falling(e, k);
      if (A != 0.0) terms.push_back({A, e - k});
    };
    add(f.gamma / f.alpha, 0.5 * f.alpha);
    if (f.type == FieldType::lennard_jones) add(-f.gamma * f.eta / f.beta, 0.5 * f.beta);
    if (terms.empty()) return {true, false, "identically zero"};
    if (terms.size() == 1) return {want * terms[0].coef >= 0.0, false, "single power of kappa"};
    if (terms[0].exponent < terms[1].exponent) std::swap(terms[0], terms[1]);
    // kappa^{e2} (A1 x + A2), x = kappa^{e1-e2} in (0, 1]
    const double at0 = terms[1].coef, at1 = terms[0].coef + terms[1].coef;
    return {want * at0 >= 0.0 && want * at1 >= 0.0, false, "affine in a power of kappa"};
  }
  constexpr int kSamples = 400;
  for (int i = 0; i < kSamples; ++i) {
    const double kappa = std::pow(10.0, -6.0 + 6.0 * i / (kSamples - 1.0));
    double q = 0.0;
    try {
      q = q_eval(f, ctx.params, R, kappa, k);
    } catch (const LimitUndefined&) {
      continue;
    }
    if (want * q < 0.0) return {false, true, "sampled"};
  }
  return {true, true, "sampled"};
}

void add_sign_evidence(CertificateResult& out, const std::string& label, const SignCheck& sc) {
  out.evidence.push_back({label + " [" + sc.method + "]", sc.holds ? 1.0 : 0.0, 1.0, sc.holds});
  if (sc.heuristic) out.heuristic = true;
}

void add_ineq(CertificateResult& out, const std::string& label, double lhs, double rhs, bool holds) {
  out.evidence.push_back({label, lhs, rhs, holds});
}

bool all_hold(const CertificateResult& r) {
  return std::all_of(r.evidence.begin(), r.evidence.end(), [](const Inequality& q) { return q.holds; });
}

// Smallest k0 making the data an order-(k0, k) pattern, or 0 if none.
int find_k0(const std::vector<int>& signs) {
  const int k = static_cast<int>(signs.size());
  for (int k0 = 1; k0 <= k; ++k0) {
    bool ok = true;
    for (int l = 1; l <= k && ok; ++l) ok = (l < k0) ? signs[l - 1] >= 0 : signs[l - 1] <= 0;
    if (ok) return k0;
  }
  return 0;
}

CertificateResult certify_global_convexity(const ModifiedPotentialCtx& ctx, Certificate which) {
  const double s = ctx.params.s, d = ctx.params.d, R2 = ctx.R * ctx.R;
  require(s > -2.0 && s <= d - 4.0, "convexity certificates need -2 < s <= d-4");
  CertificateResult out{which, Coverage::whole};
  double lo = 0.0, hi = kInf;
  if (which == Certificate::convex_inside) {
    out.coverage = Coverage::inside;
    hi = R2;
  } else if (which == Certificate::convex_outside) {
    out.coverage = Coverage::outside;
    lo = R2;
  }
  add_sign_evidence(out, "v'' >= 0", check_sign(ctx.field, 2, 1.0, 0.0, lo, hi, +1));
  out.holds = all_hold(out);
  return out;
}

CertificateResult certify_inside_higher(const ModifiedPotentialCtx& ctx, const ConditionReport& nec) {
  const RieszParams& p = ctx.params;
  const double s = p.s, d = p.d, R = ctx.R, R2 = R * R;
  require(s > d - 4.0 && s < d - 3.0, "needs d-4 < s < d-3");
  CertificateResult best{Certificate::inside_higher_derivative, Coverage::inside};
  const int k_max = std::min(ctx.field.smoothness_order - 1, 12);
  for (int k = 3; k <= k_max; ++k) {
    CertificateResult out{Certificate::inside_higher_derivative, Coverage::inside};
    out.note = "k = " + std::to_string(k);
    add_ineq(out, "condition (ii)", nec.cond_ii.lhs, nec.cond_ii.rhs, nec.cond_ii.pass);
    add_sign_evidence(out, "v^(" + std::to_string(k) + ") <= 0 on [0, R^2]",
                      check_sign(ctx.field, k, 1.0, 0.0, 0.0, R2, -1));
    for (int l = 3; l <= k - 1; ++l) {
      const double lhs = std::pow(R, s + 2.0 * l) * field_eval(ctx.field, 0.0, l);
      const double rhs = -h_eval(p, SphereEvalPoint{0.0, Branch::inside}, l);
      add_ineq(out, "R^{s+2l} v^(l)(0) <= -h^(l)(0), l = " + std::to_string(l), lhs, rhs, le_tol(lhs, rhs));
    }
    out.holds = all_hold(out) && !out.heuristic;
    if (out.holds) return out;
    if (k == 3) best = out;
  }
  best.holds = false;
  return best;
}

CertificateResult certify_outside_ladder(const ModifiedPotentialCtx& ctx) {
  const RieszParams& p = ctx.params;
  const double s = p.s, d = p.d, R = ctx.R, R2 = R * R;
  require(s > -2.0 && s < d - 4.0, "needs -2 < s < d-4");
  std::vector<int> ks;
  for (int k = 2; k <= 12; k += 2) ks.push_back(k);
  for (int k = 2; k < 0.5 * (d - s); ++k) ks.push_back(k);
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  CertificateResult best{Certificate::outside_derivative_ladder, Coverage::outside};
  bool have_best = false;
  for (int k : ks) {
    if (k > ctx.field.smoothness_order) break;
    CertificateResult out{Certificate::outside_derivative_ladder, Coverage::outside};
    out.note = "k = " + std::to_string(k);
    add_sign_evidence(out, "v^(" + std::to_string(k) + ") >= 0 on [R^2, inf)",
                      check_sign(ctx.field, k, 1.0, 0.0, R2, kInf, +1));
    for (int l = 2; l < k; ++l) {
      const double lhs = h_eval(p, SphereEvalPoint{1.0, Branch::outside}, l);
      const double rhs = -std::pow(R, 2.0 * l + s) * field_eval(ctx.field, R2, l);
      add_ineq(out, "h^(l)(1) >= -R^{2l+s} v^(l)(R^2), l = " + std::to_string(l), lhs, rhs, ge_tol(lhs, rhs));
    }
    out.holds = all_hold(out) && !out.heuristic;
    if (out.holds) return out;
    if (!have_best) {
      best = out;
      have_best = true;
    }
  }
  best.holds = false;
  return best;
}

CertificateResult certify_outside_weighted(const ModifiedPotentialCtx& ctx, const ConditionReport& nec) {
  const double s = ctx.params.s, d = ctx.params.d, R2 = ctx.R * ctx.R;
  require(s > d - 4.0 && s < d - 3.0, "needs d-4 < s < d-3");
  CertificateResult out{Certificate::outside_weighted_convexity, Coverage::outside};
  add_ineq(out, "condition (ii)", nec.cond_ii.lhs, nec.cond_ii.rhs, nec.cond_ii.pass);
  // d/dlambda [lambda^{s/2+2} v''(R^2 lambda)] = lambda^{s/2+1} [(s/2+2) v'' + rho v'''] at rho = R^2 lambda
  add_sign_evidence(out, "(s/2+2) v'' + rho v''' >= 0 on [R^2, inf)",
                    check_sign(ctx.field, 2, 0.5 * s + 2.0, 1.0, R2, kInf, +1));
  out.holds = all_hold(out) && !out.heuristic;
  return out;
}

CertificateResult certify_lj_unit(const ModifiedPotentialCtx& ctx) {
  const RieszParams& p = ctx.params;
  const double s = p.s, d = p.d;
  require(s > -2.0 && s <= d - 4.0, "needs -2 < s <= d-4");
  CertificateResult out{Certificate::lj_unit_sphere, Coverage::whole};
  const RadialField& f = ctx.field;
  if (f.type != FieldType::lennard_jones) {
    out.note = "field is not of Lennard-Jones type";
    return out;
  }
  const double c = c_sd(p);
  const double b = -f.beta - s;
  const double eta_req = 1.0 - c / (2.0 * f.gamma);
  add_ineq(out, "R = 1", ctx.R, 1.0, std::abs(ctx.R - 1.0) <= 1e-9);
  add_ineq(out, "alpha = -2 - s", f.alpha, -2.0 - s, std::abs(f.alpha + 2.0 + s) <= 1e-12 * std::max(1.0, std::abs(s)));
  add_ineq(out, "eta = 1 - c/(2 gamma)", f.eta, eta_req, std::abs(f.eta - eta_req) <= 1e-12);
  const double ratio = (s == 0.0) ? kInf : (2.0 * b + s) * (2.0 + s) / (s * (b - 2.0));
  const double gamma_min = 0.5 * c * std::max(1.0, ratio);
  add_ineq(out, "gamma > gamma_min", f.gamma, gamma_min, f.gamma > gamma_min);
  const double eta = f.eta;
  const double F = hyp2f1(0.5 * (s + 4.0), 0.5 * (4.0 + s - d), 0.5 * (d + 2.0), 1.0);
  const double b3 = ((d - s - 2.0) * (s + 2.0) / (d * f.gamma) * F + 2.0) / eta;
  const double b_min = std::max({2.0, (s + 4.0) / eta - s - 2.0, b3});
  add_ineq(out, "b > b_min", b, b_min, b > b_min);
  out.holds = all_hold(out);
  return out;
}

CertificateResult certify_ladder_inside(const ModifiedPotentialCtx& ctx, const ConditionReport& nec) {
  const RieszParams& p = ctx.params;
  const double s = p.s, d = p.d, R = ctx.R, R2 = R * R;
  require(s > -2.0 && s < d - 4.0, "needs -2 < s < d-4");
  const int k = static_cast<int>(std::ceil(0.5 * (d - s)));
  CertificateResult out{Certificate::ladder_inside, Coverage::inside};
  out.note = "k = " + std::to_string(k);
  const double sgn_k = (k % 2) ? -1.0 : 1.0;
  // h^{(k)} = h^{(k)}(0) 2F1(s/2+k, (2+s-d)/2+k; d/2+k; lambda) and the 2F1 is positive when b > 0.
  const double b_par = 0.5 * (2.0 + s - d) + k;
  const double hk0 = h_eval(p, SphereEvalPoint{0.0, Branch::inside}, k);
  add_ineq(out, "2F1 lower parameter > 0", b_par, 0.0, b_par > 0.0);
  add_ineq(out, "(-1)^k h^(k)(0) <= 0", sgn_k * hk0, 0.0, sgn_k * hk0 <= 0.0);
  const SignCheck vk = check_sign(ctx.field, k, sgn_k, 0.0, 0.0, R2, -1);
  add_sign_evidence(out, "(-1)^k v^(k) <= 0 on [0, R^2]", vk);
  UnimodalCertificate uc;
  uc.k = k;
  uc.global_kth_sign_ok = all_hold(out);
  for (int l = 1; l <= k; ++l) {
    const SphereEvalPoint one{1.0, Branch::inside};
    double val = 0.0;
    int sg = 0;
    if (l == 1) {
      sg = 0;  // condition (i)
    } else {
      const double hpart = std::pow(R, -s) * h_eval(p, one, l);
      const double vpart = std::pow(R, 2.0 * l) * field_eval(ctx.field, R2, l);
      val = ext_add(hpart, vpart);
      sg = std::isinf(val) ? (val > 0 ? 1 : -1) : sign_with_tol(val, std::abs(hpart) + std::abs(vpart));
      if (l % 2) sg = -sg;
    }
    uc.endpoint_sign_data.push_back(sg);
    add_ineq(out, "sign (-1)^l f^(l)(1-), l = " + std::to_string(l), sg, 0.0, true);
  }
  const int k0 = find_k0(uc.endpoint_sign_data);
  add_ineq(out, "half-monotone endpoint pattern", k0, 1.0, k0 >= 1);
  if (k0 >= 1 && uc.global_kth_sign_ok) {
    uc.k0 = k0;
    uc.strict = k0 >= 2 && uc.endpoint_sign_data[k0 - 2] != 0;
    const UnimodalResult ur = unimodal_certify(uc);
    add_ineq(out, "unimodal on [0, 1]", ur.unimodal, 1.0, ur.unimodal);
    // unimodal: the minimum sits at 0 or 1; condition (iii) compares them
    add_ineq(out, "f(0) >= f(1) (condition (iii))", nec.cond_iii.lhs, nec.cond_iii.rhs, nec.cond_iii.pass);
  }
  out.holds = all_hold(out) && !out.heuristic;
  return out;
}

CertificateResult certify_ladder_outside(const ModifiedPotentialCtx& ctx) {
  const RieszParams& p = ctx.params;
  const double s = p.s, d = p.d;
  require(s > -2.0 && s < d - 4.0, "needs -2 < s < d-4");
  const int k = static_cast<int>(std::ceil(0.5 * (d - s)));
  CertificateResult out{Certificate::ladder_outside, Coverage::outside};
  out.note = "k = " + std::to_string(k);
  const double sgn_k = (k % 2) ? -1.0 : 1.0;
  const double b_par = 0.5 * (2.0 + s - d) + k;
  const double yk0 = y_coef(p, k);
  add_ineq(out, "2F1 lower parameter > 0", b_par, 0.0, b_par > 0.0);
  add_ineq(out, "(-1)^k y^(k)(0) >= 0", sgn_k * yk0, 0.0, sgn_k * yk0 >= 0.0);
  add_sign_evidence(out, "(-1)^k q^(k) >= 0 on (0, 1]", q_sign(ctx, k, static_cast<int>(sgn_k)));
  UnimodalCertificate uc;
  uc.k = k;
  uc.k0 = 1;
  uc.global_kth_sign_ok = all_hold(out);
  for (int l = 1; l <= k; ++l) {
    const double yv = y_eval(p, 1.0, l);
    const double qv = q_eval(ctx.field, p, ctx.R, 1.0, l);
    const double g = ext_add(yv, qv);
    int sg = std::isinf(g) ? (g > 0 ? 1 : -1) : sign_with_tol(g, std::abs(yv) + std::abs(qv));
    if (l % 2) sg = -sg;
    // data for phi = -g: sign of (-1)^l phi^{(l)}(1)
    uc.endpoint_sign_data.push_back(-sg);
    add_ineq(out, "(-1)^l g^(l)(1) >= 0, l = " + std::to_string(l), sg, 0.0, sg >= 0);
  }
  if (all_hold(out)) {
    const UnimodalResult ur = unimodal_certify(uc);
    add_ineq(out, "-g increasing on [0, 1]", ur.increasing, 1.0, ur.increasing);
  }
  out.holds = all_hold(out) && !out.heuristic;
  return out;
}

CertificateResult certify_power_threshold(const ModifiedPotentialCtx& ctx) {
  const RieszParams& p = ctx.params;
  const double s = p.s, d = p.d;
  require(s > -2.0 && s < d - 3.0, "needs -2 < s < d-3");
  CertificateResult out{Certificate::power_law_threshold, Coverage::whole};
  const RadialField& f = ctx.field;
  if (f.type != FieldType::power) {
    out.note = "field is not a pure power law";
    return out;
  }
  add_ineq(out, "alpha > max(-s, 0)", f.alpha, std::max(-s, 0.0), f.alpha > std::max(-s, 0.0));
  const double thr = alpha_threshold(p);
  add_ineq(out, "alpha >= alpha_{s,d}", f.alpha, thr, ge_tol(f.alpha, thr));
  const double Rstar = std::pow(c_sd(p) / (2.0 * f.gamma), 1.0 / (f.alpha + s));
  add_ineq(out, "R = R_*", ctx.R, Rstar, std::abs(ctx.R - Rstar) <= 1e-9 * Rstar);
  out.holds = all_hold(out);
  return out;
}

}  // namespace

double f_eval(const ModifiedPotentialCtx& ctx, const SphereEvalPoint& pt, int order) {
  check_ctx(ctx);
  const RieszParams& p = ctx.params;
  const double s = p.s, R = ctx.R;
  const double h = h_eval(p, pt, order);
  const double v = field_eval(ctx.field, R * R * pt.lambda, order);
  double out = ext_add(std::pow(R, -s) * h, std::pow(R, 2.0 * order) * v);
  if (s == 0.0 && order == 0) out -= std::log(R);
  return out;
}

double f_eval(const ModifiedPotentialCtx& ctx, double lambda, int order) {
  return f_eval(ctx, eval_point(lambda), order);
}

double f_limit_at_infinity(const ModifiedPotentialCtx& ctx) {
  check_ctx(ctx);
  return limit_at_infinity(concat(potential_tail(ctx.params, ctx.R), expansion_in_radius(ctx.field)));
}

double y_eval(const RieszParams& p, double kappa, int order) {
  validate(p);
  if (!(p.s < p.d - 2.0)) throw DomainError("y requires s < d - 2");
  if (!(kappa >= 0.0 && kappa <= 1.0)) throw DomainError("y_eval: kappa must lie in [0, 1]");
  if (order < 0) throw DomainError("y_eval: negative order");
  const double s = p.s, d = p.d;
  return scaled_hyp(y_coef(p, order), 0.5 * s + order + 1.0, 0.5 * (2.0 + s - d) + order, 0.5 * d + order, kappa);
}

double g_eval(const ModifiedPotentialCtx& ctx, double kappa, int order) {
  check_ctx(ctx);
  return ext_add(y_eval(ctx.params, kappa, order), q_eval(ctx.field, ctx.params, ctx.R, kappa, order));
}

double stationarity_residual(const RieszParams& p, const RadialField& f, double R) {
  return std::pow(R, p.s + 2.0) * field_eval(f, R * R, 1) - 0.25 * c_sd(p);
}

StationaryRadii stationary_radii(const RieszParams& p, const RadialField& f, const RadiusSearch& search) {
  validate(p);
  validate(f);
  if (!(p.s < p.d - 1.0)) throw DomainError("stationary_radii requires s < d - 1");
  if (!(search.R_min > 0.0) || !(search.R_max > search.R_min) || search.grid_n < 2) {
    throw DomainError("stationary_radii: bad search bracket");
  }
  StationaryRadii out;
  const double c = c_sd(p);
  if (f.type == FieldType::power) {
    out.closed_form = true;
    if (f.alpha + p.s != 0.0) {
      const double R = std::pow(c / (2.0 * f.gamma), 1.0 / (f.alpha + p.s));
      if (R >= search.R_min && R <= search.R_max) out.radii.push_back(R);
    }
    return out;
  }
  const int n = search.grid_n;
  const double lr = std::log(search.R_min), ur = std::log(search.R_max);
  std::vector<double> Rs(n), res(n);
  for (int i = 0; i < n; ++i) {
    Rs[i] = std::exp(lr + (ur - lr) * i / (n - 1.0));
    if (i == 0) Rs[i] = search.R_min;
    if (i == n - 1) Rs[i] = search.R_max;
    try {
      res[i] = stationarity_residual(p, f, Rs[i]);
    } catch (const LimitUndefined&) {
      res[i] = kNaN;
    }
  }
  auto resid = [&](double R) { return stationarity_residual(p, f, R); };
  for (int i = 0; i < n; ++i) {
    if (res[i] == 0.0) {
      out.radii.push_back(Rs[i]);
      continue;
    }
    if (i + 1 >= n || std::isnan(res[i]) || std::isnan(res[i + 1]) || res[i + 1] == 0.0) continue;
    if ((res[i] < 0.0) == (res[i + 1] < 0.0)) continue;
    double lo = Rs[i], hi = Rs[i + 1], flo = res[i];
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double fm = resid(mid);
      if (fm == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((fm < 0.0) == (flo < 0.0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    // A jump (e.g. across a sink) keeps both sides away from zero.
    const double scale = std::max({std::abs(res[i]), std::abs(res[i + 1]), 0.25 * c});
    const double fl = resid(lo), fh = resid(hi);
    if (std::min(std::abs(fl), std::abs(fh)) > 1e-6 * scale) continue;
    out.radii.push_back(std::abs(fl) <= std::abs(fh) ? lo : hi);
  }
  auto shrinking = [&](int end, int next) {
    return std::isfinite(res[end]) && std::isfinite(res[next]) && std::abs(res[end]) < std::abs(res[next]) &&
           std::abs(res[end]) < 0.025 * c;
  };
  out.boundary_warning = shrinking(0, 1) || shrinking(n - 1, n - 2);
  return out;
}

bool ConditionReport::all_pass() const { return cond_i.pass && cond_ii.pass && cond_iii.pass && cond_iv.pass; }

std::string ConditionReport::first_failure() const {
  if (!cond_i.pass) return "i";
  if (!cond_ii.pass) return "ii";
  if (!cond_iii.pass) return "iii";
  if (!cond_iv.pass) return "iv";
  return "";
}

ConditionReport necessary_report(const ModifiedPotentialCtx& ctx) {
  check_ctx(ctx);
  const RieszParams& p = ctx.params;
  const double s = p.s, d = p.d, R = ctx.R, R2 = R * R;
  if (!(s > -2.0 && s < d - 3.0)) throw DomainError("necessary conditions need -2 < s < d-3");
  const double c = c_sd(p);
  const double v1 = field_eval(ctx.field, R2, 1);
  const double vR = field_eval(ctx.field, R2, 0);
  ConditionReport rep;
  rep.cond_i.residual = std::pow(R, s + 2.0) * v1 - 0.25 * c;
  rep.cond_i.pass = std::abs(rep.cond_i.residual) <= 1e-9 * std::max(1.0, 0.25 * c);

  rep.cond_ii.lhs = R2 * field_eval(ctx.field, R2, 2) / v1;
  rep.cond_ii.rhs = -(s + 2.0) * (d - s - 4.0) / (4.0 * (d - s - 3.0));
  rep.cond_ii.pass = ge_tol(rep.cond_ii.lhs, rep.cond_ii.rhs);

  const double v0 = field_eval(ctx.field, 0.0, 0);
  if (s != 0.0) {
    rep.cond_iii.lhs = std::isinf(v0) ? v0 : std::pow(R, s) * (v0 - vR);
    rep.cond_iii.rhs = (c - 1.0) / s;
  } else {
    rep.cond_iii.lhs = std::isinf(v0) ? v0 : v0 - vR;
    rep.cond_iii.rhs = b_d(p.d);
  }
  rep.cond_iii.pass = ge_tol(rep.cond_iii.lhs, rep.cond_iii.rhs);

  Asymptotic kernel;
  if (s != 0.0) {
    rep.cond_iv.lhs = vR + std::pow(R, -s) * c / s;
    // (R + r)^{-s}/s = (1/s) sum_k binom(-s, k) R^k r^{-s-k}
    const int k_max = static_cast<int>(std::ceil(std::max(0.0, -s))) + 1;
    double binom = 1.0;
    for (int k = 0; k <= k_max; ++k) {
      if (k > 0) binom *= (-s - (k - 1.0)) / k;
      if (binom != 0.0) kernel.terms.push_back({binom * std::pow(R, k) / s, -s - k, 0});
    }
  } else {
    rep.cond_iv.lhs = -std::log(R) + b_d(p.d) + vR;
    kernel.terms.push_back({-1.0, 0.0, 1});
  }
  rep.cond_iv.rhs = limit_at_infinity(concat(kernel, expansion_in_radius(ctx.field)));
  rep.cond_iv.pass = le_tol(rep.cond_iv.lhs, rep.cond_iv.rhs);
  return rep;
}

double alpha_threshold(const RieszParams& p) {
  validate(p);
  const double s = p.s, d = p.d;
  if (!(s > -2.0 && s < d - 3.0)) throw DomainError("alpha_threshold needs -2 < s < d-3");
  const double second = 2.0 - (s + 2.0) * (d - s - 4.0) / (2.0 * (d - s - 3.0));
  if (s == 0.0) return std::max(-1.0 / (2.0 * b_d(p.d)), second);
  // s c / (2 - 2c) written as s / (2/c - 2); 1/c as a Gamma quotient is exact
  // for small integer arguments, so the branch meets 2 exactly at s = d-4.
  const double args[4] = {0.5 * (d - s), d - 0.5 * s - 1.0, 0.5 * d, d - s - 1.0};
  double inv_c = 0.0;
  if (std::all_of(std::begin(args), std::end(args), [](double x) { return x < 150.0; })) {
    inv_c = std::tgamma(args[0]) * std::tgamma(args[1]) / (std::tgamma(args[2]) * std::tgamma(args[3]));
  } else {
    inv_c = std::exp(ln_gamma(args[0]) + ln_gamma(args[1]) - ln_gamma(args[2]) - ln_gamma(args[3]));
  }
  return std::max(s / (2.0 * inv_c - 2.0), second);
}

double power_law_radius(const RieszParams& p, double gamma, double alpha) {
  validate(p);
  if (!(gamma > 0.0)) throw DomainError("gamma must be positive");
  if (!(alpha + p.s > 0.0)) throw DomainError("power_law_radius needs alpha + s > 0");
  return std::pow(c_sd(p) / (2.0 * gamma), 1.0 / (alpha + p.s));
}

double power_law_energy(const RieszParams& p, double gamma, double alpha) {
  validate(p);
  const double s = p.s;
  if (!(gamma > 0.0) || !(alpha > std::max(-s, 0.0))) throw DomainError("power_law_energy needs alpha > max(-s, 0)");
  if (s == 0.0) {
    return (1.0 + std::log(2.0 * gamma)) / alpha - std::numbers::ln2 +
           0.5 * (digamma(p.d - 1.0) - digamma(0.5 * (p.d - 1.0)));
  }
  const double c = c_sd(p);
  return (alpha + s) * std::pow(2.0 * gamma, s / (alpha + s)) / (alpha * s) * std::pow(c, alpha / (alpha + s));
}

double sphere_field_energy(const RieszParams& p, const RadialField& f, double R) {
  return sphere_energy(p, R) + 2.0 * field_eval(f, R * R, 0);
}

std::string certificate_name(Certificate c) {
  switch (c) {
    case Certificate::global_convexity: return "global_convexity";
    case Certificate::convex_inside: return "convex_inside";
    case Certificate::convex_outside: return "convex_outside";
    case Certificate::inside_higher_derivative: return "inside_higher_derivative";
    case Certificate::outside_derivative_ladder: return "outside_derivative_ladder";
    case Certificate::outside_weighted_convexity: return "outside_weighted_convexity";
    case Certificate::lj_unit_sphere: return "lj_unit_sphere";
    case Certificate::ladder_inside: return "ladder_inside";
    case Certificate::ladder_outside: return "ladder_outside";
    case Certificate::power_law_threshold: return "power_law_threshold";
  }
  return "unknown";
}

std::string coverage_name(Coverage c) {
  switch (c) {
    case Coverage::whole: return "whole";
    case Coverage::inside: return "inside";
    case Coverage::outside: return "outside";
  }
  return "unknown";
}

const std::vector<Certificate>& all_certificates() {
  static const std::vector<Certificate> all = {
      Certificate::global_convexity,         Certificate::lj_unit_sphere,
      Certificate::convex_inside,            Certificate::convex_outside,
      Certificate::inside_higher_derivative, Certificate::outside_derivative_ladder,
      Certificate::outside_weighted_convexity, Certificate::ladder_inside,
      Certificate::ladder_outside,           Certificate::power_law_threshold,
  };
  return all;
}

CertificateResult sufficient_certify(const ModifiedPotentialCtx& ctx, Certificate which) {
  check_ctx(ctx);
  const RieszParams& p = ctx.params;
  if (!(p.s > -2.0 && p.s < p.d - 3.0)) throw WrongWindow("certificates need -2 < s < d-3");
  switch (which) {
    case Certificate::global_convexity:
    case Certificate::convex_inside:
    case Certificate::convex_outside:
      return certify_global_convexity(ctx, which);
    case Certificate::inside_higher_derivative:
      return certify_inside_higher(ctx, necessary_report(ctx));
    case Certificate::outside_derivative_ladder:
      return certify_outside_ladder(ctx);
    case Certificate::outside_weighted_convexity:
      return certify_outside_weighted(ctx, necessary_report(ctx));
    case Certificate::lj_unit_sphere:
      return certify_lj_unit(ctx);
    case Certificate::ladder_inside:
      return certify_ladder_inside(ctx, necessary_report(ctx));
    case Certificate::ladder_outside:
      return certify_ladder_outside(ctx);
    case Certificate::power_law_threshold:
      return certify_power_threshold(ctx);
  }
  throw WrongWindow("unknown certificate");
}

UnimodalResult unimodal_certify(const UnimodalCertificate& cert) {
  if (cert.k0 < 1 || cert.k < cert.k0) throw MalformedCertificate("need k >= k0 >= 1");
  if (static_cast<int>(cert.endpoint_sign_data.size()) != cert.k) {
    throw MalformedCertificate("endpoint sign data must have length k");
  }
  if (!cert.global_kth_sign_ok) throw MalformedCertificate("global sign of the k-th derivative not established");
  for (int l = 1; l <= cert.k; ++l) {
    const int sg = cert.endpoint_sign_data[l - 1];
    if (sg < -1 || sg > 1) throw MalformedCertificate("signs must be -1, 0 or 1");
    if (l < cert.k0 && sg < 0) throw MalformedCertificate("(-1)^l phi^(l)(a) must be >= 0 below k0");
    if (l >= cert.k0 && sg > 0) throw MalformedCertificate("(-1)^l phi^(l)(a) must be <= 0 from k0 on");
  }
  if (cert.strict && cert.k0 >= 2 && cert.endpoint_sign_data[cert.k0 - 2] == 0) {
    throw MalformedCertificate("strictness needs phi^(k0-1)(a) != 0");
  }
  UnimodalResult out;
  out.unimodal = true;
  out.increasing = cert.k0 == 1;
  out.not_increasing_whole = cert.strict && cert.k0 >= 2;
  return out;
}

ScanResult global_min_scan(const ModifiedPotentialCtx& ctx, const ScanGrid& grid) {
  check_ctx(ctx);
  if (grid.n < 100) throw DomainError("global_min_scan needs n >= 100");
  if (!(grid.lambda_min > 0.0) || !(grid.lambda_max > grid.lambda_min)) throw DomainError("bad scan range");
  ScanResult out;
  out.f_at_one = f_eval(ctx, SphereEvalPoint{1.0, Branch::at_one}, 0);
  out.f_at_zero = f_eval(ctx, SphereEvalPoint{0.0, Branch::inside}, 0);
  out.f_at_infinity = f_limit_at_infinity(ctx);
  out.argmin = 1.0;
  out.min_value = out.f_at_one;
  bool ok = true;
  double margin = kInf;
  auto visit = [&](double lambda, double val) {
    if (val < out.min_value) {
      out.min_value = val;
      out.argmin = lambda;
    }
    margin = std::min(margin, val - out.f_at_one);
    if (!(out.f_at_one <= val + 1e-10)) ok = false;
  };
  visit(0.0, out.f_at_zero);
  visit(kInf, out.f_at_infinity);
  const double a = grid.lambda_min, b = grid.lambda_max;
  for (int i = 0; i < grid.n; ++i) {
    const double t = i / (grid.n - 1.0);
    const double lambda = grid.log_spaced ? a * std::pow(b / a, t) : a + (b - a) * t;
    if (lambda == 1.0) continue;
    visit(lambda, f_eval(ctx, lambda, 0));
  }
  out.min_at_one = ok && out.f_at_one <= out.f_at_zero && out.f_at_one <= out.f_at_infinity;
  out.margin = margin;
  return out;
}

std::string verdict_name(VerdictKind k) {
  switch (k) {
    case VerdictKind::certified_sphere: return "CertifiedSphere";
    case VerdictKind::necessary_fail: return "NecessaryFail";
    case VerdictKind::inconclusive: return "Inconclusive";
  }
  return "unknown";
}

namespace {

RadiusRecord examine_radius(const RieszParams& p, const RadialField& f, double R, const ScanGrid& grid) {
  RadiusRecord rec;
  rec.R = R;
  if (f.type == FieldType::power_sink && R == f.R0) {
    rec.notes.push_back("radius sits on the sink; conditions not evaluated");
    return rec;
  }
  if (f.type == FieldType::power_sink && f.alpha < 4.0) {
    rec.notes.push_back("v'' is not finite at the sink; conditions assume extended-sense smoothness");
  }
  const ModifiedPotentialCtx ctx{p, f, R};
  rec.checked = true;
  rec.conditions = necessary_report(ctx);
  for (Certificate c : all_certificates()) {
    try {
      rec.certificates.push_back(sufficient_certify(ctx, c));
    } catch (const WrongWindow&) {
    }
  }
  rec.scan = global_min_scan(ctx, grid);
  bool whole = false, inside = false, outside = false;
  std::string whole_name, pair_name;
  for (const CertificateResult& c : rec.certificates) {
    if (!c.holds || c.heuristic) continue;
    if (c.coverage == Coverage::whole && !whole) {
      whole = true;
      whole_name = certificate_name(c.which);
    }
    if (c.coverage == Coverage::inside && !inside) {
      inside = true;
      pair_name = certificate_name(c.which) + (pair_name.empty() ? "" : "+" + pair_name);
    }
    if (c.coverage == Coverage::outside && !outside) {
      outside = true;
      pair_name += (pair_name.empty() ? "" : "+") + certificate_name(c.which);
    }
  }
  const bool sufficient = whole || (inside && outside);
  if (rec.conditions.all_pass() && sufficient) {
    if (rec.scan.min_at_one) {
      rec.certified = true;
      rec.certificate = whole ? whole_name : pair_name;
    } else {
      rec.notes.push_back("certificate holds but the scan found f(lambda) < f(1); verdict withheld");
    }
  }
  return rec;
}

}  // namespace

SphereVerdict check_sphere(const RieszParams& p, const RadialField& f, const RadiusSearch& search,
                           const ScanGrid& grid) {
  validate(p);
  validate(f);
  if (!(p.s > -2.0 && p.s < p.d - 3.0)) throw DomainError("check_sphere needs -2 < s < d-3");
  SphereVerdict out;
  const StationaryRadii sr = stationary_radii(p, f, search);
  out.radii = sr.radii;
  out.boundary_warning = sr.boundary_warning;
  if (sr.boundary_warning) out.notes.push_back("stationarity residual still shrinking at the bracket edge");
  if (!confinement_check(f, p).satisfied) {
    out.notes.push_back("confinement not guaranteed by the field tail");
  }
  for (double R : sr.radii) out.records.push_back(examine_radius(p, f, R, grid));
  out.R = kNaN;
  for (const RadiusRecord& r : out.records) {
    if (r.certified) {
      out.kind = VerdictKind::certified_sphere;
      out.R = r.R;
      out.certificate = r.certificate;
      return out;
    }
  }
  if (out.records.empty()) {
    out.kind = VerdictKind::necessary_fail;
    out.failed_condition = "i";
    out.notes.push_back("no stationary radius in the search bracket");
    return out;
  }
  bool all_fail = true;
  for (const RadiusRecord& r : out.records) all_fail = all_fail && r.checked && !r.conditions.all_pass();
  if (all_fail) {
    out.kind = VerdictKind::necessary_fail;
    out.R = out.records.front().R;
    out.failed_condition = out.records.front().conditions.first_failure();
  } else {
    out.kind = VerdictKind::inconclusive;
  }
  return out;
}

PowerLawVerdict power_law_verdict(const RieszParams& p, double gamma, double alpha) {
  validate(p);
  if (!(p.s > -2.0 && p.s < p.d - 3.0)) throw DomainError("power_law_verdict needs -2 < s < d-3");
  if (!(alpha > std::max(-p.s, 0.0))) throw DomainError("power_law_verdict needs alpha > max(-s, 0)");
  PowerLawVerdict out;
  out.alpha_threshold = alpha_threshold(p);
  out.R_star = power_law_radius(p, gamma, alpha);
  out.energy = power_law_energy(p, gamma, alpha);
  const RadialField f = RadialField::power(gamma, alpha);
  out.verdict = check_sphere(p, f, RadiusSearch{std::min(1e-4, 0.5 * out.R_star), std::max(1e4, 2.0 * out.R_star)});
  if (alpha < out.alpha_threshold) {
    out.verdict.notes.push_back("alpha below alpha_{s,d}: no sphere is optimal for any radius");
    if (out.verdict.kind == VerdictKind::inconclusive) out.verdict.notes.push_back("no necessary condition failed");
  }
  return out;
}

double rescale_maps(const RieszParams& p, double gamma, double alpha, ScalingDirection dir, double datum) {
  validate(p);
  const double s = p.s;
  if (!(gamma > 0.0) || !(alpha > std::max(-s, 0.0))) throw DomainError("rescale_maps needs alpha > max(-s, 0)");
  if (dir == ScalingDirection::to_free) {
    if (!(datum > 0.0)) throw DomainError("alpha-moment must be positive");
    return std::pow(datum, 1.0 / alpha);
  }
  if (s == 0.0) return std::pow(1.0 / (2.0 * gamma), 1.0 / alpha);
  if (!(s * datum > 0.0)) throw DomainError("need s * I_s(nu) > 0");
  return std::pow(s * datum / (2.0 * gamma), 1.0 / (s + alpha));
}

}  // namespace riesz
