#include "riesz/region_scan.hpp"

#include <cmath>
#include <limits>

#include <omp.h>

#include "riesz/equilibrium.hpp"

namespace riesz {

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) throw DomainError("grid needs at least one point");
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  if (n > 1) out[n - 1] = hi;
  return out;
}

namespace {

RegionCell classify(int d, double s, double alpha, double threshold, double gamma) {
  RegionCell cell{s, alpha, false, std::numeric_limits<double>::quiet_NaN()};
  if (!std::isfinite(threshold) || !(alpha > std::max(-s, 0.0)) || alpha < threshold) return cell;
  cell.in_region = true;
  cell.R_star = power_law_radius(RieszParams{d, s}, gamma, alpha);
  return cell;
}

}  // namespace

std::vector<RegionCell> region_scan(int d, const std::vector<double>& s_grid, const std::vector<double>& alpha_grid,
                                    double gamma, Exec exec, int threads) {
  if (d < 2) throw DomainError("dimension must be at least 2");
  if (!(gamma > 0.0)) throw DomainError("gamma must be positive");
  const int ns = static_cast<int>(s_grid.size());
  const int na = static_cast<int>(alpha_grid.size());
  // alpha_{s,d} once per row; infinity marks rows outside -2 < s < d-3
  std::vector<double> thr(ns, std::numeric_limits<double>::infinity());
  for (int i = 0; i < ns; ++i) {
    const double s = s_grid[i];
    if (s > -2.0 && s < d - 3.0) thr[i] = alpha_threshold(RieszParams{d, s});
  }
  std::vector<RegionCell> out(static_cast<std::size_t>(ns) * na);
  const long total = static_cast<long>(ns) * na;
  if (exec == Exec::serial) {
    for (long k = 0; k < total; ++k) out[k] = classify(d, s_grid[k / na], alpha_grid[k % na], thr[k / na], gamma);
    return out;
  }
  const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(nt)
  for (long k = 0; k < total; ++k) out[k] = classify(d, s_grid[k / na], alpha_grid[k % na], thr[k / na], gamma);
  return out;
}

}  // namespace riesz
