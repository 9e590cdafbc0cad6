#include "riesz/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <random>

#include "riesz/equilibrium.hpp"

namespace riesz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Runs body(i) for i in [0, n); exceptions from worker threads are rethrown
// on the caller. Work items write disjoint outputs, so both paths agree bitwise.
template <class Body>
void for_each_index(int n, Exec exec, Body&& body) {
  if (exec == Exec::serial) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr err = nullptr;
#pragma omp parallel for schedule(dynamic, 4)
  for (int i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
#pragma omp critical(riesz_oracle_error)
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
}

double kernel(double s, double r) { return s == 0.0 ? -std::log(r) : std::pow(r, -s) / s; }

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double out = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) out += a[i] * b[i];
  return out;
}

}  // namespace

std::vector<double> RadialGrid::radii() const {
  if (!(r_min > 0.0) || !(r_max > r_min) || M < 2) throw DomainError("radial grid needs 0 < r_min < r_max, M >= 2");
  std::vector<double> r(M);
  for (int i = 0; i < M; ++i) r[i] = r_min + i * cell();
  r[M - 1] = r_max;
  return r;
}

std::vector<double> radial_kernel_matrix(const RieszParams& p, const std::vector<double>& radii, Exec exec) {
  validate(p);
  if (!(p.s < p.d - 1.0)) throw DomainError("radial kernel needs s < d - 1");
  const int M = static_cast<int>(radii.size());
  std::vector<double> K(static_cast<std::size_t>(M) * M);
  for_each_index(M, exec, [&](int i) {
    for (int j = i; j < M; ++j) {
      const double e = sphere_mutual_energy(p, radii[i], radii[j]);
      K[static_cast<std::size_t>(i) * M + j] = e;
      K[static_cast<std::size_t>(j) * M + i] = e;
    }
  });
  return K;
}

double radial_interaction_energy(const RieszParams& p, const std::vector<double>& radii,
                                 const std::vector<double>& weights) {
  const std::vector<double> K = radial_kernel_matrix(p, radii, Exec::serial);
  const std::size_t M = radii.size();
  double out = 0.0;
  for (std::size_t i = 0; i < M; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < M; ++j) row += K[i * M + j] * weights[j];
    out += weights[i] * row;
  }
  return out;
}

double radial_objective(const RieszParams& p, const RadialField& f, const RadialMeasure& m) {
  double out = radial_interaction_energy(p, m.radii, m.weights);
  for (std::size_t i = 0; i < m.radii.size(); ++i) out += 2.0 * m.weights[i] * field_eval(f, m.radii[i] * m.radii[i], 0);
  return out;
}

RadialMeasure radial_equilibrium_solve(const RieszParams& p, const RadialField& f, const RadialGrid& grid,
                                       const RadialSolveOptions& opt) {
  validate(p);
  validate(f);
  if (grid.M < 50) throw DomainError("radial solve needs M >= 50");
  const std::vector<double> r = grid.radii();
  const int M = grid.M;
  const std::vector<double> K = radial_kernel_matrix(p, r, opt.exec);
  auto col = [&](int j) { return &K[static_cast<std::size_t>(j) * M]; };  // symmetric: row == column
  std::vector<double> b(M);
  for (int i = 0; i < M; ++i) b[i] = field_eval(f, r[i] * r[i], 0);

  // start at the best single sphere
  int start = 0;
  for (int i = 1; i < M; ++i) {
    if (K[static_cast<std::size_t>(i) * M + i] + 2.0 * b[i] < K[static_cast<std::size_t>(start) * M + start] + 2.0 * b[start]) start = i;
  }
  std::vector<double> w(M, 0.0), Kw(col(start), col(start) + M), grad(M);
  w[start] = 1.0;

  RadialMeasure out;
  out.radii = r;
  auto finish = [&](int it, double gap, bool ok) {
    out.weights = w;
    out.objective = dot(w, Kw) + 2.0 * dot(b, w);
    out.fw_gap = gap;
    out.iterations = it;
    out.converged = ok;
  };
  double gap = kInf;
  for (int it = 0; it < opt.max_iters; ++it) {
    if (it % 1000 == 999) {
      for (int i = 0; i < M; ++i) {
        double acc = 0.0;
        const double* row = col(i);
        for (int j = 0; j < M; ++j) acc += row[j] * w[j];
        Kw[i] = acc;
      }
    }
    for (int i = 0; i < M; ++i) grad[i] = 2.0 * (Kw[i] + b[i]);
    const double gw = dot(grad, w);
    int i_fw = 0, i_aw = -1;
    for (int i = 1; i < M; ++i) {
      if (grad[i] < grad[i_fw]) i_fw = i;
    }
    for (int i = 0; i < M; ++i) {
      if (w[i] > 0.0 && (i_aw < 0 || grad[i] > grad[i_aw])) i_aw = i;
    }
    gap = gw - grad[i_fw];
    const double wKw = dot(w, Kw);
    if (gap <= opt.tol * std::max(1.0, std::abs(wKw + 2.0 * dot(b, w)))) {
      finish(it, gap, true);
      return out;
    }
    const double away_gain = grad[i_aw] - gw;
    if (gap >= away_gain || w[i_aw] >= 1.0) {
      // d = e_i - w
      const double dKd = K[static_cast<std::size_t>(i_fw) * M + i_fw] - 2.0 * Kw[i_fw] + wKw;
      double t = dKd > 0.0 ? std::min(1.0, gap / (2.0 * dKd)) : 1.0;
      const double* ci = col(i_fw);
      for (int j = 0; j < M; ++j) {
        w[j] *= (1.0 - t);
        Kw[j] = (1.0 - t) * Kw[j] + t * ci[j];
      }
      w[i_fw] += t;
    } else {
      // d = w - e_j
      const double t_max = w[i_aw] / (1.0 - w[i_aw]);
      const double dKd = wKw - 2.0 * Kw[i_aw] + K[static_cast<std::size_t>(i_aw) * M + i_aw];
      const double t = dKd > 0.0 ? std::min(t_max, away_gain / (2.0 * dKd)) : t_max;
      const double* cj = col(i_aw);
      for (int j = 0; j < M; ++j) {
        w[j] *= (1.0 + t);
        Kw[j] = (1.0 + t) * Kw[j] - t * cj[j];
      }
      w[i_aw] = (t == t_max) ? 0.0 : w[i_aw] - t;
    }
    for (double& x : w) x = std::max(x, 0.0);
  }
  finish(opt.max_iters, gap, false);
  throw RadialNotConverged("radial solve: Frank-Wolfe gap above tolerance", out);
}

double ParticleConfig::radius(int i) const {
  double acc = 0.0;
  for (int k = 0; k < d; ++k) acc += points[static_cast<std::size_t>(i) * d + k] * points[static_cast<std::size_t>(i) * d + k];
  return std::sqrt(acc);
}

double particle_energy(const RieszParams& p, const RadialField* f, const std::vector<double>& x, int N, Exec exec) {
  const int d = p.d;
  const double s = p.s;
  std::vector<double> row(N, 0.0);
  for_each_index(N, exec, [&](int i) {
    const double* xi = &x[static_cast<std::size_t>(i) * d];
    double acc = 0.0;
    for (int j = i + 1; j < N; ++j) {
      const double* xj = &x[static_cast<std::size_t>(j) * d];
      double r2 = 0.0;
      for (int k = 0; k < d; ++k) r2 += (xi[k] - xj[k]) * (xi[k] - xj[k]);
      acc += kernel(s, std::sqrt(r2));
    }
    double rho = 0.0;
    for (int k = 0; k < d; ++k) rho += xi[k] * xi[k];
    const double v = f ? field_eval(*f, rho, 0) : 0.0;
    row[i] = 2.0 * acc / (static_cast<double>(N) * N) + 2.0 * v / N;
  });
  double out = 0.0;
  for (double r : row) out += r;
  return out;
}

void particle_gradient(const RieszParams& p, const RadialField* f, const std::vector<double>& x, int N,
                       std::vector<double>& grad, Exec exec) {
  const int d = p.d;
  const double s = p.s;
  grad.assign(static_cast<std::size_t>(N) * d, 0.0);
  const double pair_scale = 2.0 / (static_cast<double>(N) * N);
  for_each_index(N, exec, [&](int i) {
    const double* xi = &x[static_cast<std::size_t>(i) * d];
    double* gi = &grad[static_cast<std::size_t>(i) * d];
    std::vector<double> diff(d);
    for (int j = 0; j < N; ++j) {
      if (j == i) continue;
      const double* xj = &x[static_cast<std::size_t>(j) * d];
      double r2 = 0.0;
      for (int k = 0; k < d; ++k) {
        diff[k] = xi[k] - xj[k];
        r2 += diff[k] * diff[k];
      }
      // grad K_s(z) = -z |z|^{-s-2}
      const double w = -std::pow(r2, -0.5 * s - 1.0) * pair_scale;
      for (int k = 0; k < d; ++k) gi[k] += w * diff[k];
    }
    if (f) {
      double rho = 0.0;
      for (int k = 0; k < d; ++k) rho += xi[k] * xi[k];
      const double w = 4.0 * field_eval(*f, rho, 1) / N;
      for (int k = 0; k < d; ++k) gi[k] += w * xi[k];
    }
  });
}

ParticleConfig particle_equilibrium_solve(const RieszParams& p, const RadialField* f, int N,
                                          const ParticleSolveOptions& opt) {
  validate(p);
  if (f) validate(*f);
  if (N < 2) throw DomainError("particle solve needs N >= 2");
  const int d = p.d;
  double scale = 1.0;
  if (f && p.s < p.d - 1.0) {
    const StationaryRadii sr = stationary_radii(p, *f);
    if (!sr.radii.empty()) scale = sr.radii.front();
  }
  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> gauss(0.0, scale / std::sqrt(static_cast<double>(d)));
  ParticleConfig cfg;
  cfg.N = N;
  cfg.d = d;
  cfg.points.resize(static_cast<std::size_t>(N) * d);
  for (double& v : cfg.points) v = gauss(rng);

  double E = particle_energy(p, f, cfg.points, N, opt.exec);
  while (!std::isfinite(E)) {
    if (cfg.restarts >= opt.max_restarts) throw Collision("particle solve: coincident points after restarts");
    ++cfg.restarts;
    std::normal_distribution<double> jitter(0.0, 1e-6 * scale);
    for (double& v : cfg.points) v += jitter(rng);
    E = particle_energy(p, f, cfg.points, N, opt.exec);
  }
  cfg.energy_trace.push_back(E);
  std::vector<double> g, trial(cfg.points.size());
  particle_gradient(p, f, cfg.points, N, g, opt.exec);
  double t = opt.step0;
  int it = 0;
  for (; it < opt.max_iters; ++it) {
    const double gn2 = dot(g, g);
    cfg.grad_norm = std::sqrt(gn2);
    if (cfg.grad_norm <= opt.grad_tol) {
      cfg.converged = true;
      break;
    }
    bool accepted = false;
    while (t >= opt.min_step) {
      for (std::size_t k = 0; k < trial.size(); ++k) trial[k] = cfg.points[k] - t * g[k];
      const double Et = particle_energy(p, f, trial, N, opt.exec);
      if (Et <= E - 1e-4 * t * gn2) {
        accepted = true;
        E = Et;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      // step collapse: no descent left at working precision
      cfg.converged = true;
      break;
    }
    cfg.points.swap(trial);
    cfg.energy_trace.push_back(E);
    particle_gradient(p, f, cfg.points, N, g, opt.exec);
    bool escaped = false;
    for (int i = 0; i < N && !escaped; ++i) escaped = cfg.radius(i) > opt.box;
    if (escaped) {
      it += 1;
      break;
    }
    t = std::min(2.0 * t, 1e12);
  }
  cfg.iterations = it;
  cfg.final_step = t;
  cfg.grad_norm = std::sqrt(dot(g, g));
  return cfg;
}

double SupportReport::mass_within_band(double R, double halfwidth) const {
  double out = 0.0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (std::abs(radii[i] - R) <= halfwidth) out += weights[i];
  }
  return out;
}

namespace {

SupportReport summarize(std::vector<double> radii, std::vector<double> weights, std::optional<double> ref) {
  SupportReport rep;
  double mass = 0.0, mean = 0.0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    mass += weights[i];
    mean += weights[i] * radii[i];
  }
  if (mass > 0.0) mean /= mass;
  double var = 0.0;
  for (std::size_t i = 0; i < radii.size(); ++i) var += weights[i] * (radii[i] - mean) * (radii[i] - mean);
  rep.mean_radius = mean;
  rep.radius_std = mass > 0.0 ? std::sqrt(var / mass) : 0.0;
  rep.radii = std::move(radii);
  rep.weights = std::move(weights);
  // a mass fraction; summation rounding must not push it past 1
  if (ref) rep.sphere_score = std::min(1.0, rep.mass_within_band(*ref, 0.02 * *ref) / (mass > 0.0 ? mass : 1.0));
  return rep;
}

}  // namespace

SupportReport support_report(const RadialMeasure& m, std::optional<double> ref_radius) {
  return summarize(m.radii, m.weights, ref_radius);
}

SupportReport support_report(const ParticleConfig& cfg, std::optional<double> ref_radius) {
  std::vector<double> r(cfg.N), w(cfg.N, 1.0 / cfg.N);
  for (int i = 0; i < cfg.N; ++i) r[i] = cfg.radius(i);
  return summarize(std::move(r), std::move(w), ref_radius);
}

ScalingCheck scaling_equivalence_check(const RieszParams& p, double gamma, double alpha, const RadialMeasure& m,
                                       double c) {
  validate(p);
  const double s = p.s;
  if (!(alpha > std::max(-s, 0.0))) throw DomainError("scaling check needs alpha > max(-s, 0)");
  if (!(c > 0.0)) throw DomainError("scale c must be positive");
  double moment = 0.0;
  for (std::size_t i = 0; i < m.radii.size(); ++i) moment += m.weights[i] * std::pow(m.radii[i], alpha);
  const double shrink = std::pow(moment, 1.0 / alpha);
  std::vector<double> nu(m.radii.size()), scaled(m.radii.size());
  for (std::size_t i = 0; i < nu.size(); ++i) {
    nu[i] = m.radii[i] / shrink;
    scaled[i] = c * nu[i];
  }
  const RadialField V = RadialField::power(gamma, alpha);
  ScalingCheck out;
  out.unit_moment_energy = radial_interaction_energy(p, nu, m.weights);
  RadialMeasure pushed;
  pushed.radii = scaled;
  pushed.weights = m.weights;
  out.lhs = radial_objective(p, V, pushed);
  const double field_part = 2.0 * gamma / alpha * std::pow(c, alpha);
  out.rhs = (s == 0.0 ? out.unit_moment_energy - std::log(c) : std::pow(c, -s) * out.unit_moment_energy) + field_part;
  out.identity_residual = std::abs(out.lhs - out.rhs);
  return out;
}

double optimal_scaling_numeric(const RieszParams& p, double gamma, double alpha, double A) {
  validate(p);
  const double s = p.s;
  const double k = 2.0 * gamma / alpha;
  // phi(u1) - phi(u2) with c = e^u, free of cancellation
  auto diff = [&](double u1, double u2) {
    const double du = u1 - u2;
    const double field = k * std::exp(alpha * u2) * std::expm1(alpha * du);
    if (s == 0.0) return -du + field;
    return A * std::exp(-s * u2) * std::expm1(-s * du) + field;
  };
  const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = -40.0, hi = 40.0;
  double x1 = hi - invphi * (hi - lo), x2 = lo + invphi * (hi - lo);
  while (hi - lo > 1e-15 * std::max(1.0, std::abs(lo))) {
    if (diff(x1, x2) < 0.0) {
      hi = x2;
      x2 = x1;
      x1 = hi - invphi * (hi - lo);
    } else {
      lo = x1;
      x1 = x2;
      x2 = lo + invphi * (hi - lo);
    }
    if (!(x1 < x2)) break;
  }
  return std::exp(0.5 * (lo + hi));
}

}  // namespace riesz
