// Serial vs OpenMP timings for the three parallel kernels. Each pair must agree bitwise.

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <random>
#include <vector>

#include "riesz/oracle.hpp"
#include "riesz/region_scan.hpp"

using namespace riesz;

namespace {

double best_of(int reps, const std::function<void()>& fn) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void report(const char* name, double ts, double tp, bool same) {
  std::printf("%-26s serial %9.4f s  parallel %9.4f s  speedup %5.2fx  %s\n", name, ts, tp, ts / tp,
              same ? "identical" : "MISMATCH");
}

bool same_cells(const std::vector<RegionCell>& a, const std::vector<RegionCell>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].in_region != b[i].in_region || a[i].s != b[i].s || a[i].alpha != b[i].alpha) return false;
    if (std::memcmp(&a[i].R_star, &b[i].R_star, sizeof(double)) != 0) return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  const int reps = argc > 1 ? std::max(1, std::atoi(argv[1])) : 3;
  std::printf("threads: %d, best of %d\n", omp_get_max_threads(), reps);
  bool all_same = true;

  {
    const RieszParams p{10, 2.0};
    const std::vector<double> r = RadialGrid{0.2, 2.0, 400}.radii();
    std::vector<double> Ks, Kp;
    const double ts = best_of(reps, [&] { Ks = radial_kernel_matrix(p, r, Exec::serial); });
    const double tp = best_of(reps, [&] { Kp = radial_kernel_matrix(p, r, Exec::parallel); });
    report("K matrix (M=400)", ts, tp, Ks == Kp);
    all_same = all_same && Ks == Kp;
  }

  {
    const RieszParams p{4, 0.5};
    const RadialField f = RadialField::power(1, 4);
    const int N = 2048;
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g(0.0, 0.5);
    std::vector<double> x(static_cast<std::size_t>(N) * p.d);
    for (double& v : x) v = g(rng);
    double Es = 0.0, Ep = 0.0;
    std::vector<double> gs, gp;
    const double ts = best_of(reps, [&] {
      Es = particle_energy(p, &f, x, N, Exec::serial);
      particle_gradient(p, &f, x, N, gs, Exec::serial);
    });
    const double tp = best_of(reps, [&] {
      Ep = particle_energy(p, &f, x, N, Exec::parallel);
      particle_gradient(p, &f, x, N, gp, Exec::parallel);
    });
    const bool same = Es == Ep && gs == gp;
    report("particle E+grad (N=2048)", ts, tp, same);
    all_same = all_same && same;
  }

  {
    const auto s = linspace(-1.9, 0.9, 600), a = linspace(0.1, 6.0, 600);
    std::vector<RegionCell> cs, cp;
    const double ts = best_of(reps, [&] { cs = region_scan(4, s, a, 1.0, Exec::serial); });
    const double tp = best_of(reps, [&] { cp = region_scan(4, s, a, 1.0, Exec::parallel); });
    report("region scan (600x600)", ts, tp, same_cells(cs, cp));
    all_same = all_same && same_cells(cs, cp);
  }
  return all_same ? 0 : 1;
}
