#pragma once

#include <vector>

#include "riesz/oracle.hpp"

namespace riesz {

struct RegionCell {
  double s = 0.0;
  double alpha = 0.0;
  bool in_region = false;
  double R_star = 0.0;  // NaN outside the region
};

/// n points from lo to hi inclusive; n = 1 gives {lo}.
std::vector<double> linspace(double lo, double hi, int n);

/// Power-law sphere region over an (s, alpha) grid, row-major in s. A cell is
/// in the region when -2 < s < d-3, alpha > max(-s, 0) and alpha >= alpha_{s,d}.
/// threads <= 0 leaves the OpenMP default in place.
std::vector<RegionCell> region_scan(int d, const std::vector<double>& s_grid, const std::vector<double>& alpha_grid,
                                    double gamma, Exec exec, int threads = 0);

}  // namespace riesz
