// Serial reference vs OpenMP kernels: wall time and bitwise agreement.
// Usage: bench_band_table [N] [grid_points] [repeats]

#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <random>

#include "ribbonband/bands.hpp"
#include "ribbonband/oracle.hpp"

using namespace ribbonband;

namespace {

template <class F>
double best_of(int repeats, F&& f) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  const int N = argc > 1 ? std::atoi(argv[1]) : 16;
  const int points = argc > 2 ? std::atoi(argv[2]) : 1001;
  const int repeats = argc > 3 ? std::atoi(argv[3]) : 3;

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  std::vector<double> v(static_cast<std::size_t>(2 * N + 1));
  for (auto& x : v) x = u(rng);
  const RibbonParams params(N, v);
  const auto grid = uniform_grid(points);

  std::cout << "threads " << omp_get_max_threads() << ", N " << N << ", grid " << points << "\n";

  BandTable serial = band_table_serial(params, grid);
  BandTable parallel = band_table(params, grid);
  const double ts = best_of(repeats, [&] { serial = band_table_serial(params, grid); });
  const double tp = best_of(repeats, [&] { parallel = band_table(params, grid); });
  const bool same_table = serial.values == parallel.values;
  std::cout << "band_table      serial " << ts << " s, parallel " << tp << " s, speedup " << ts / tp
            << ", identical " << (same_table ? "yes" : "no") << "\n";

  const int cells = std::max(3, kOracleMaxRows / params.p());
  std::vector<double> bs, bp;
  const double us = best_of(repeats, [&] { bs = bloch_union_spectrum_serial(params, cells); });
  const double up = best_of(repeats, [&] { bp = bloch_union_spectrum(params, cells); });
  const bool same_union = bs == bp;
  std::cout << "bloch_union L=" << cells << " serial " << us << " s, parallel " << up << " s, speedup " << us / up
            << ", identical " << (same_union ? "yes" : "no") << "\n";
  return same_table && same_union ? 0 : 1;
}
