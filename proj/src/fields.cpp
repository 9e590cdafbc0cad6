#include "riesz/fields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "riesz/errors.hpp"

namespace riesz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double signed_inf(double sign) { return sign < 0.0 ? -kInf : kInf; }

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

// x (x-1) ... (x-n+1)
double falling(double x, int n) {
  double out = 1.0;
  for (int i = 0; i < n; ++i) out *= (x - i);
  return out;
}

double binom_general(double x, int n) {
  double out = 1.0;
  for (int i = 0; i < n; ++i) out *= (x - i) / (i + 1.0);
  return out;
}

bool is_monomial_type(FieldType t) {
  return t == FieldType::power || t == FieldType::lennard_jones || t == FieldType::power_log;
}

std::vector<Monomial> base_monomials(const RadialField& f) {
  switch (f.type) {
    case FieldType::power:
      return {{f.gamma / f.alpha, 0.5 * f.alpha, 0}};
    case FieldType::lennard_jones:
      return {{f.gamma / f.alpha, 0.5 * f.alpha, 0}, {-f.gamma * f.eta / f.beta, 0.5 * f.beta, 0}};
    case FieldType::power_log:
      return {{f.gamma, 0.5 * f.alpha, 1}};
    default:
      return {};
  }
}

std::vector<Monomial> derive(const std::vector<Monomial>& in) {
  std::vector<Monomial> out;
  for (const Monomial& t : in) {
    if (t.coef * t.exponent != 0.0) out.push_back({t.coef * t.exponent, t.exponent - 1.0, t.log_power});
    if (t.log_power > 0) out.push_back({t.coef * t.log_power, t.exponent - 1.0, t.log_power - 1});
  }
  return out;
}

std::vector<Monomial> derive_n(std::vector<Monomial> in, int n) {
  for (int i = 0; i < n; ++i) in = derive(in);
  return in;
}

// Merge equal (exponent, log_power) pairs; exact cancellations drop out.
std::vector<Monomial> combine(const std::vector<Monomial>& in) {
  std::vector<Monomial> out;
  std::vector<double> scale;
  for (const Monomial& t : in) {
    bool merged = false;
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (out[i].log_power == t.log_power &&
          std::abs(out[i].exponent - t.exponent) <= 1e-12 * std::max(1.0, std::abs(t.exponent))) {
        out[i].coef += t.coef;
        scale[i] = std::max(scale[i], std::abs(t.coef));
        merged = true;
        break;
      }
    }
    if (!merged) {
      out.push_back(t);
      scale.push_back(std::abs(t.coef));
    }
  }
  std::vector<Monomial> kept;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (std::abs(out[i].coef) > 1e-13 * scale[i]) kept.push_back(out[i]);
  }
  return kept;
}

double eval_monomials(const std::vector<Monomial>& terms, double rho) {
  const double L = std::log(rho);
  double sum = 0.0;
  for (const Monomial& t : terms) sum += t.coef * std::pow(rho, t.exponent) * (t.log_power ? std::pow(L, t.log_power) : 1.0);
  return sum;
}

// Limit as rho -> 0+: the most singular term wins.
double limit_at_zero(const std::vector<Monomial>& raw) {
  const std::vector<Monomial> terms = combine(raw);
  const Monomial* dom = nullptr;
  double constant = 0.0;
  for (const Monomial& t : terms) {
    const bool divergent = t.exponent < 0.0 || (t.exponent == 0.0 && t.log_power > 0);
    if (t.exponent == 0.0 && t.log_power == 0) constant += t.coef;
    if (!divergent) continue;
    if (!dom || t.exponent < dom->exponent || (t.exponent == dom->exponent && t.log_power > dom->log_power)) dom = &t;
  }
  if (dom) return signed_inf(sign_of(dom->coef) * ((dom->log_power % 2) ? -1 : 1));
  return constant;
}

double exponential_derivative(const RadialField& f, double rho, int n) {
  const double K = f.gamma / (f.alpha * f.beta);
  const double m = 0.5 * f.beta;
  if (rho == 0.0) {
    if (n == 0) return K;
    const bool integer_m = m == std::floor(m);
    if (!integer_m && n > m) return signed_inf(falling(m, n));
    if (!integer_m) return 0.0;
  }
  // w_n = y_n / e^u with y = e^u: w_{j+1} = sum_k C(j,k) u^{(k+1)} w_{j-k}.
  std::vector<double> du(n + 1, 0.0);
  for (int k = 1; k <= n; ++k) {
    const double ff = falling(m, k);
    du[k] = ff == 0.0 ? 0.0 : f.alpha * ff * std::pow(rho, m - k);
  }
  std::vector<double> w(n + 1, 0.0);
  w[0] = 1.0;
  for (int j = 0; j < n; ++j) {
    double acc = 0.0;
    double c = 1.0;
    for (int k = 0; k <= j; ++k) {
      acc += c * du[k + 1] * w[j - k];
      c = c * (j - k) / (k + 1.0);
    }
    w[j + 1] = acc;
  }
  if (w[n] == 0.0) return 0.0;
  return K * std::exp(f.alpha * std::pow(rho, m)) * w[n];
}

double sink_derivative(const RadialField& f, double rho, int n) {
  const double p = 0.5 * f.alpha;
  const double x = rho - f.R0 * f.R0;
  const double ff = falling(p, n);
  const double c = f.gamma / f.alpha * ff;
  if (ff == 0.0) return 0.0;
  if (x != 0.0) return c * std::pow(std::abs(x), p - n) * ((n % 2 == 1 && x < 0.0) ? -1.0 : 1.0);
  if (p - n > 0.0) return 0.0;
  if (n % 2 == 1) throw LimitUndefined("power_sink: odd derivative at the sink has no limit");
  if (p - n == 0.0) return c;
  return signed_inf(c);
}

}  // namespace

RadialField RadialField::power(double gamma, double alpha) {
  RadialField f;
  f.type = FieldType::power;
  f.gamma = gamma;
  f.alpha = alpha;
  validate(f);
  return f;
}

RadialField RadialField::lennard_jones(double gamma, double eta, double alpha, double beta) {
  RadialField f;
  f.type = FieldType::lennard_jones;
  f.gamma = gamma;
  f.eta = eta;
  f.alpha = alpha;
  f.beta = beta;
  validate(f);
  return f;
}

RadialField RadialField::exponential(double gamma, double alpha, double beta) {
  RadialField f;
  f.type = FieldType::exponential;
  f.gamma = gamma;
  f.alpha = alpha;
  f.beta = beta;
  validate(f);
  return f;
}

RadialField RadialField::power_log(double gamma, double alpha) {
  RadialField f;
  f.type = FieldType::power_log;
  f.gamma = gamma;
  f.alpha = alpha;
  validate(f);
  return f;
}

RadialField RadialField::power_sink(double gamma, double alpha, double R0) {
  RadialField f;
  f.type = FieldType::power_sink;
  f.gamma = gamma;
  f.alpha = alpha;
  f.R0 = R0;
  validate(f);
  return f;
}

void validate(const RadialField& f) {
  auto finite = [](double x) { return std::isfinite(x); };
  if (!finite(f.gamma) || !finite(f.alpha) || !finite(f.beta) || !finite(f.eta) || !finite(f.R0)) {
    throw DomainError("field parameters must be finite");
  }
  if (!(f.gamma > 0.0)) throw DomainError("field: gamma must be positive");
  switch (f.type) {
    case FieldType::power:
    case FieldType::power_log:
      if (!(f.alpha > 0.0)) throw DomainError("field: alpha must be positive");
      break;
    case FieldType::lennard_jones:
      if (!(f.eta > 0.0)) throw DomainError("lennard_jones: eta must be positive");
      if (!(f.alpha > f.beta)) throw DomainError("lennard_jones: need alpha > beta");
      if (f.alpha == 0.0 || f.beta == 0.0) throw DomainError("lennard_jones: alpha and beta must be nonzero");
      break;
    case FieldType::exponential:
      if (!(f.alpha > 0.0) || !(f.beta > 0.0)) throw DomainError("exponential: alpha and beta must be positive");
      break;
    case FieldType::power_sink:
      if (!(f.alpha > 0.0)) throw DomainError("power_sink: alpha must be positive");
      if (!(f.R0 > 0.0)) throw DomainError("power_sink: R0 must be positive");
      break;
  }
  if (f.smoothness_order < 0) throw DomainError("field: negative smoothness order");
}

std::string type_name(FieldType t) {
  switch (t) {
    case FieldType::power: return "power";
    case FieldType::lennard_jones: return "lennard_jones";
    case FieldType::exponential: return "exponential";
    case FieldType::power_log: return "power_log";
    case FieldType::power_sink: return "power_sink";
  }
  return "unknown";
}

RadialField field_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw DomainError("field spec must be a JSON object");
  if (!j.contains("type") || !j["type"].is_string()) throw DomainError("field spec needs a string \"type\"");
  const std::string type = j["type"].get<std::string>();
  std::vector<std::string> keys;
  RadialField f;
  if (type == "power") {
    f.type = FieldType::power;
    keys = {"gamma", "alpha"};
  } else if (type == "lennard_jones") {
    f.type = FieldType::lennard_jones;
    keys = {"gamma", "eta", "alpha", "beta"};
  } else if (type == "exponential") {
    f.type = FieldType::exponential;
    keys = {"gamma", "alpha", "beta"};
  } else if (type == "power_log") {
    f.type = FieldType::power_log;
    keys = {"gamma", "alpha"};
  } else if (type == "power_sink") {
    f.type = FieldType::power_sink;
    keys = {"gamma", "alpha", "R0"};
  } else {
    throw DomainError("unknown field type \"" + type + "\"");
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() == "type") continue;
    if (std::find(keys.begin(), keys.end(), it.key()) == keys.end()) {
      throw DomainError("unknown key \"" + it.key() + "\" for field type " + type);
    }
  }
  auto get = [&](const std::string& k) {
    if (!j.contains(k) || !j[k].is_number()) throw DomainError("field spec needs numeric \"" + k + "\"");
    return j[k].get<double>();
  };
  f.gamma = get("gamma");
  f.alpha = get("alpha");
  if (f.type == FieldType::lennard_jones) {
    f.eta = get("eta");
    f.beta = get("beta");
  }
  if (f.type == FieldType::exponential) f.beta = get("beta");
  if (f.type == FieldType::power_sink) f.R0 = get("R0");
  validate(f);
  return f;
}

nlohmann::json field_to_json(const RadialField& f) {
  nlohmann::json j;
  j["type"] = type_name(f.type);
  j["gamma"] = f.gamma;
  j["alpha"] = f.alpha;
  if (f.type == FieldType::lennard_jones) {
    j["eta"] = f.eta;
    j["beta"] = f.beta;
  }
  if (f.type == FieldType::exponential) j["beta"] = f.beta;
  if (f.type == FieldType::power_sink) j["R0"] = f.R0;
  return j;
}

double field_eval(const RadialField& f, double rho, int order) {
  if (!(rho >= 0.0) || std::isinf(rho)) throw DomainError("field_eval: rho must be finite and >= 0");
  if (order < 0) throw DomainError("field_eval: negative order");
  if (order > f.smoothness_order) throw OrderUnavailable("field_eval: order beyond smoothness_order");
  if (is_monomial_type(f.type)) {
    const std::vector<Monomial> terms = derive_n(base_monomials(f), order);
    if (rho == 0.0) return limit_at_zero(terms);
    return eval_monomials(terms, rho);
  }
  if (f.type == FieldType::exponential) return exponential_derivative(f, rho, order);
  return sink_derivative(f, rho, order);
}

double q_eval(const RadialField& f, const RieszParams& p, double R, double kappa, int order) {
  validate(p);
  if (!(R > 0.0)) throw DomainError("q_eval: R must be positive");
  if (!(kappa >= 0.0 && kappa <= 1.0)) throw DomainError("q_eval: kappa must lie in [0,1]");
  if (order < 0) throw DomainError("q_eval: negative order");
  const double s = p.s;
  if (kappa == 0.0) {
    if (order > 0) throw LimitUndefined("q_eval: derivatives at kappa = 0 are not provided");
    // q(kappa) = 2 rho^{s/2+1} v'(rho), rho = R^2/kappa -> infinity
    Asymptotic a = expansion_at_infinity(f, 1);
    for (Monomial& t : a.terms) {
      t.exponent += 0.5 * s + 1.0;
      t.coef *= 2.0;
    }
    return limit_at_infinity(a);
  }
  const int n = order;
  // Taylor coefficients at kappa of g = R^2/kappa, then of v'(g) by composition.
  std::vector<double> g(n + 1);
  for (int j = 0; j <= n; ++j) g[j] = R * R * ((j % 2) ? -1.0 : 1.0) * std::pow(kappa, -1.0 - j);
  std::vector<double> B(n + 1, 0.0);
  std::vector<double> power(n + 1, 0.0);  // (g - g0)^k truncated
  power[0] = 1.0;
  double kfact = 1.0;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) {
      std::vector<double> next(n + 1, 0.0);
      for (int i = 0; i <= n; ++i) {
        if (power[i] == 0.0) continue;
        for (int j = 1; i + j <= n; ++j) next[i + j] += power[i] * g[j];
      }
      power = next;
      kfact *= k;
    }
    const double Dk = field_eval(f, g[0], k + 1);
    if (std::isinf(Dk)) return Dk;
    for (int i = 0; i <= n; ++i) B[i] += Dk / kfact * power[i];
  }
  const double e = -0.5 * s - 1.0;
  double acc = 0.0;
  for (int i = 0; i <= n; ++i) acc += binom_general(e, i) * std::pow(kappa, e - i) * B[n - i];
  double nfact = 1.0;
  for (int i = 2; i <= n; ++i) nfact *= i;
  return 2.0 * std::pow(R, s + 2.0) * nfact * acc;
}

double limit_at_infinity(const Asymptotic& a) {
  if (a.exp_dominant_sign != 0) return signed_inf(a.exp_dominant_sign);
  const std::vector<Monomial> terms = combine(a.terms);
  const Monomial* dom = nullptr;
  double constant = 0.0;
  for (const Monomial& t : terms) {
    const bool divergent = t.exponent > 0.0 || (t.exponent == 0.0 && t.log_power > 0);
    if (t.exponent == 0.0 && t.log_power == 0) constant += t.coef;
    if (!divergent) continue;
    if (!dom || t.exponent > dom->exponent || (t.exponent == dom->exponent && t.log_power > dom->log_power)) dom = &t;
  }
  if (dom) return signed_inf(dom->coef);
  return constant;
}

Asymptotic expansion_at_infinity(const RadialField& f, int order) {
  Asymptotic a;
  if (is_monomial_type(f.type)) {
    a.terms = derive_n(base_monomials(f), order);
  } else if (f.type == FieldType::exponential) {
    a.exp_dominant_sign = 1;
  } else {
    const double p = 0.5 * f.alpha;
    const double c = f.gamma / f.alpha * falling(p, order);
    if (c != 0.0) {
      const double rho0 = f.R0 * f.R0;
      for (int j = 0; j <= 16; ++j) {
        const double coef = c * binom_general(p - order, j) * std::pow(-rho0, j);
        if (coef != 0.0) a.terms.push_back({coef, p - order - j, 0});
      }
    }
  }
  return a;
}

Asymptotic expansion_in_radius(const RadialField& f) {
  Asymptotic a = expansion_at_infinity(f, 0);
  for (Monomial& t : a.terms) {
    t.coef *= std::pow(2.0, t.log_power);
    t.exponent *= 2.0;
  }
  return a;
}

FieldLimits field_limits(const RadialField& f) {
  FieldLimits out;
  out.v_at_zero = field_eval(f, 0.0, 0);
  out.v_at_infinity = limit_at_infinity(expansion_at_infinity(f, 0));
  out.tail = expansion_in_radius(f);
  return out;
}

ConfinementReport confinement_check(const RadialField& f, const RieszParams& p) {
  validate(p);
  const FieldLimits lim = field_limits(f);
  const double s = p.s;
  if (s > 0.0) {
    if (lim.v_at_infinity == kInf) return {true, ConfinementClause::a, "v(infinity) = +infinity"};
    if (!std::isfinite(lim.v_at_infinity)) return {false, ConfinementClause::a, "v(infinity) = -infinity"};
    Asymptotic a;
    for (const Monomial& t : lim.tail.terms) {
      if (t.exponent == 0.0 && t.log_power == 0) continue;
      a.terms.push_back({s * t.coef, t.exponent + s, t.log_power});
    }
    const double L = limit_at_infinity(a);
    if (L < -1.0) return {true, ConfinementClause::a, "lim s r^s (v - v(infinity)) < -1"};
    return {false, ConfinementClause::a, "v(infinity) finite and lim s r^s (v - v(infinity)) >= -1"};
  }
  if (s == 0.0) {
    Asymptotic a = lim.tail;
    a.terms.push_back({-1.0, 0.0, 1});
    if (limit_at_infinity(a) == kInf) return {true, ConfinementClause::b, "v(r^2) - log r -> +infinity"};
    return {false, ConfinementClause::b, "v(r^2) - log r does not diverge to +infinity"};
  }
  Asymptotic a = lim.tail;
  if (a.exp_dominant_sign != 0) a.exp_dominant_sign *= -1;
  for (Monomial& t : a.terms) {
    t.coef *= s;
    t.exponent += s;
  }
  const double L = limit_at_infinity(a);
  if (L < -std::pow(2.0, -s)) return {true, ConfinementClause::c, "limsup s r^s v(r^2) < -2^{-s}"};
  return {false, ConfinementClause::c, "limsup s r^s v(r^2) >= -2^{-s}"};
}

namespace {

struct Endpoint {
  double value;  // may be infinite
};

// Sign requirement on an affine function of a monotone variable: checking
// both endpoints decides the whole interval.
bool affine_ok(double lo_val, double hi_val, int want) {
  return want * lo_val >= 0.0 && want * hi_val >= 0.0;
}

double affine_at(double A, double B, double x) {
  if (std::isinf(x)) return B == 0.0 ? A : signed_inf(B * sign_of(x));
  return A + B * x;
}

double log_end(double rho) {
  if (rho == 0.0) return -kInf;
  if (std::isinf(rho)) return kInf;
  return std::log(rho);
}

double pow_end(double rho, double e) {
  if (rho == 0.0) return 0.0;
  if (std::isinf(rho)) return kInf;
  return std::pow(rho, e);
}

SignCheck sample_sign(const RadialField& f, int k, double a0, double a1, double lo, double hi, int want) {
  const double a = std::max(lo, 1e-8);
  const double b = std::isinf(hi) ? std::max(a, 1.0) * 1e8 : hi;
  constexpr int kSamples = 1000;
  for (int i = 0; i < kSamples; ++i) {
    const double rho = (b > a) ? a * std::pow(b / a, i / (kSamples - 1.0)) : a;
    double e = 0.0;
    try {
      e = a0 * field_eval(f, rho, k) + (a1 != 0.0 ? a1 * rho * field_eval(f, rho, k + 1) : 0.0);
    } catch (const LimitUndefined&) {
      continue;
    }
    if (want * e < 0.0) return {false, true, "sampled"};
  }
  return {true, true, "sampled"};
}

}  // namespace

SignCheck check_sign(const RadialField& f, int k, double a0, double a1, double lo, double hi, int want) {
  if (!(lo >= 0.0) || !(hi >= lo)) throw DomainError("check_sign: need 0 <= lo <= hi");
  if (want != 1 && want != -1) throw DomainError("check_sign: want must be +1 or -1");
  if (is_monomial_type(f.type)) {
    // Every term of a0 D^k t + a1 rho D^{k+1} t carries rho^{q_t - k}.
    struct Group {
      double exponent, A, B;
    };
    std::vector<Group> groups;
    for (const Monomial& t : base_monomials(f)) {
      std::vector<Monomial> e;
      for (Monomial m : derive_n({t}, k)) {
        m.coef *= a0;
        e.push_back(m);
      }
      if (a1 != 0.0) {
        for (Monomial m : derive_n({t}, k + 1)) {
          m.coef *= a1;
          m.exponent += 1.0;
          e.push_back(m);
        }
      }
      Group g{t.exponent - k, 0.0, 0.0};
      for (const Monomial& m : combine(e)) (m.log_power == 0 ? g.A : g.B) += m.coef;
      if (g.A != 0.0 || g.B != 0.0) groups.push_back(g);
    }
    if (groups.empty()) return {true, false, "identically zero"};
    if (groups.size() == 1) {
      const Group& g = groups[0];
      const bool ok = affine_ok(affine_at(g.A, g.B, log_end(lo)), affine_at(g.A, g.B, log_end(hi)), want);
      return {ok, false, "affine in log rho"};
    }
    if (groups.size() == 2 && groups[0].B == 0.0 && groups[1].B == 0.0) {
      Group hi_g = groups[0], lo_g = groups[1];
      if (hi_g.exponent < lo_g.exponent) std::swap(hi_g, lo_g);
      const double delta = hi_g.exponent - lo_g.exponent;
      const bool ok = affine_ok(affine_at(lo_g.A, hi_g.A, pow_end(lo, delta)),
                                affine_at(lo_g.A, hi_g.A, pow_end(hi, delta)), want);
      return {ok, false, "affine in a power of rho"};
    }
    return sample_sign(f, k, a0, a1, lo, hi, want);
  }
  if (f.type == FieldType::exponential && a1 == 0.0 && k <= 2) {
    if (k <= 1) return {want * a0 >= 0.0, false, "positive closed form"};
    // v'' = (gamma/2) e^u rho^{m-2} [(m-1) + alpha m rho^m]
    const double m = 0.5 * f.beta;
    const double A = a0 * (m - 1.0), B = a0 * f.alpha * m;
    const bool ok = affine_ok(affine_at(A, B, pow_end(lo, m)), affine_at(A, B, pow_end(hi, m)), want);
    return {ok, false, "affine in a power of rho"};
  }
  if (f.type == FieldType::power_sink && a1 == 0.0) {
    const double c = a0 * f.gamma / f.alpha * falling(0.5 * f.alpha, k);
    if (c == 0.0) return {true, false, "identically zero off the sink"};
    const double rho0 = f.R0 * f.R0;
    bool ok = true;
    if (lo < rho0) ok = ok && want * c * ((k % 2) ? -1.0 : 1.0) >= 0.0;
    if (hi > rho0) ok = ok && want * c >= 0.0;
    return {ok, false, "constant sign on each side of the sink"};
  }
  return sample_sign(f, k, a0, a1, lo, hi, want);
}

}  // namespace riesz
