#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "riesz/errors.hpp"
#include "riesz/fields.hpp"
#include "riesz/sphere_kernel.hpp"

namespace riesz {

// Kernels come in a serial reference form and an OpenMP form; both
// produce bitwise-identical results for the same inputs.
enum class Exec { serial, parallel };

struct RadialGrid {
  double r_min = 0.2;
  double r_max = 2.0;
  int M = 400;
  /// r_i = r_min + i (r_max - r_min)/(M-1)
  std::vector<double> radii() const;
  double cell() const { return (r_max - r_min) / (M - 1); }
};

// Radial probability measure: weight w_i on the sphere of radius r_i.
struct RadialMeasure {
  std::vector<double> radii;
  std::vector<double> weights;
  double objective = 0.0;  // w^T K w + 2 b^T w
  double fw_gap = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct RadialSolveOptions {
  int max_iters = 200000;
  double tol = 1e-10;
  Exec exec = Exec::parallel;
};

class RadialNotConverged : public NotConverged {
 public:
  RadialNotConverged(const std::string& what, RadialMeasure best) : NotConverged(what), best(std::move(best)) {}
  RadialMeasure best;
};

/// Row-major M x M mutual energies of sigma_{r_i} and sigma_{r_j}.
std::vector<double> radial_kernel_matrix(const RieszParams& p, const std::vector<double>& radii, Exec exec);

/// w^T K w + 2 b^T w with b_i = v(r_i^2).
double radial_objective(const RieszParams& p, const RadialField& f, const RadialMeasure& m);

/// Away-step Frank-Wolfe on the simplex with exact line search.
/// Throws RadialNotConverged (carrying the last iterate) past max_iters.
RadialMeasure radial_equilibrium_solve(const RieszParams& p, const RadialField& f, const RadialGrid& grid,
                                       const RadialSolveOptions& opt = {});

struct ParticleConfig {
  int N = 0;
  int d = 0;
  std::vector<double> points;  // N x d, row-major
  std::vector<double> energy_trace;
  int iterations = 0;
  int restarts = 0;
  double final_step = 0.0;
  double grad_norm = 0.0;
  bool converged = false;
  double radius(int i) const;
};

struct ParticleSolveOptions {
  int max_iters = 4000;
  double step0 = 0.1;
  std::uint64_t seed = 1;
  double grad_tol = 1e-9;
  double min_step = 1e-14;
  double box = 1e6;  // any |x_i| beyond this stops the run unconverged
  int max_restarts = 3;
  Exec exec = Exec::parallel;
};

class Collision : public Error {
 public:
  using Error::Error;
};

/// E_N = (1/N^2) sum_{i != j} K_s(x_i - x_j) + (2/N) sum_i V(x_i); field may be absent (V = 0).
double particle_energy(const RieszParams& p, const RadialField* f, const std::vector<double>& x, int N, Exec exec);

/// Gradient of particle_energy into grad (resized to N*d).
void particle_gradient(const RieszParams& p, const RadialField* f, const std::vector<double>& x, int N,
                       std::vector<double>& grad, Exec exec);

/// Gradient descent with Armijo backtracking. converged = false when the
/// configuration leaves the box or max_iters is reached.
ParticleConfig particle_equilibrium_solve(const RieszParams& p, const RadialField* f, int N,
                                          const ParticleSolveOptions& opt = {});

struct SupportReport {
  double mean_radius = 0.0;
  double radius_std = 0.0;
  double sphere_score = 0.0;  // mass within 2% of the reference radius, 0 if none given
  std::vector<double> radii;
  std::vector<double> weights;
  double mass_within_band(double R, double halfwidth) const;
};

SupportReport support_report(const RadialMeasure& m, std::optional<double> ref_radius = std::nullopt);
SupportReport support_report(const ParticleConfig& cfg, std::optional<double> ref_radius = std::nullopt);

/// I_s(nu) for a radial measure.
double radial_interaction_energy(const RieszParams& p, const std::vector<double>& radii,
                                 const std::vector<double>& weights);

struct ScalingCheck {
  double identity_residual = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double unit_moment_energy = 0.0;  // I_s(nu) with nu rescaled to unit alpha-moment
};

/// Rescales m to unit alpha-moment (nu), then compares I_{s,V}((c Id)#nu)
/// evaluated directly against c^{-s} I_s(nu) + (2 gamma/alpha) c^alpha
/// (I_0(nu) - log c + ... when s = 0).
ScalingCheck scaling_equivalence_check(const RieszParams& p, double gamma, double alpha, const RadialMeasure& m,
                                       double c = 1.0);

/// Golden-section minimizer of c -> c^{-s} A + (2 gamma/alpha) c^alpha
/// (A - log c + ... when s = 0). Comparisons use cancellation-free differences.
double optimal_scaling_numeric(const RieszParams& p, double gamma, double alpha, double A);

}  // namespace riesz
