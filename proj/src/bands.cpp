#include "ribbonband/bands.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ribbonband/errors.hpp"
#include "ribbonband/golden.hpp"

namespace ribbonband {

std::vector<double> uniform_grid(int points) {
  if (points < 2) throw DomainError("grid needs at least 2 points");
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) grid[static_cast<std::size_t>(i)] = 2.0 * i / (points - 1);
  grid.back() = 2.0;
  return grid;
}

namespace {

void check_grid(std::span<const double> grid) {
  if (grid.empty()) throw DomainError("empty a-grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0 && grid[i] <= 2.0)) throw DomainError("a-grid must lie in [0, 2]");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw DomainError("a-grid must be strictly increasing");
  }
}

std::span<const double> grid_or_default(std::span<const double> grid, std::vector<double>& storage) {
  if (!grid.empty()) return grid;
  storage = uniform_grid();
  return storage;
}

}  // namespace

BandExtrema refine_extrema(const std::function<double(double)>& f, std::span<const double> grid,
                           std::span<const double> samples, double a_tol) {
  const auto n = grid.size();
  const auto lo_it = std::min_element(samples.begin(), samples.end());
  const auto hi_it = std::max_element(samples.begin(), samples.end());
  const auto bracket = [&](std::size_t i) {
    return std::pair{grid[i == 0 ? 0 : i - 1], grid[std::min(i + 1, n - 1)]};
  };

  BandExtrema out{};
  const auto i_lo = static_cast<std::size_t>(lo_it - samples.begin());
  out.a_min = grid[i_lo];
  out.lo = *lo_it;
  if (n > 1) {
    const auto [l, r] = bracket(i_lo);
    const auto m = golden_section_minimize(f, l, r, a_tol);
    if (m.value < out.lo) {
      out.a_min = m.x;
      out.lo = m.value;
    }
  }

  const auto i_hi = static_cast<std::size_t>(hi_it - samples.begin());
  out.a_max = grid[i_hi];
  out.hi = *hi_it;
  if (n > 1) {
    const auto [l, r] = bracket(i_hi);
    const auto m = golden_section_minimize([&f](double a) { return -f(a); }, l, r, a_tol);
    if (-m.value > out.hi) {
      out.a_max = m.x;
      out.hi = -m.value;
    }
  }
  return out;
}

std::vector<double> band_function(int label, const RibbonParams& params, std::span<const double> grid, double tol) {
  check_grid(grid);
  if (label < -params.N() || label > params.N()) throw DomainError("band label out of range");
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out[i] = eigenvalue_at(jacobi_matrix(params, grid[i]), slot_of_band(label, params.N()), tol);
  }
  return out;
}

namespace {

BandTable empty_table(const RibbonParams& params, std::span<const double> grid) {
  check_grid(grid);
  return BandTable{params, {grid.begin(), grid.end()},
                   std::vector<std::vector<double>>(static_cast<std::size_t>(params.p()),
                                                    std::vector<double>(grid.size())),
                   std::vector<BandExtrema>(static_cast<std::size_t>(params.p()))};
}

void fill_column(BandTable& table, std::size_t i, double tol) {
  const auto list = eigenvalues(jacobi_matrix(table.params, table.grid[i]), tol);
  for (std::size_t s = 0; s < list.values().size(); ++s) table.values[s][i] = list.values()[s];
}

void refine_band(BandTable& table, std::size_t s, double tol) {
  const auto slot = static_cast<int>(s);
  const auto f = [&table, slot, tol](double a) {
    return eigenvalue_at(jacobi_matrix(table.params, std::clamp(a, 0.0, 2.0)), slot, tol);
  };
  table.extrema[s] = refine_extrema(f, table.grid, table.values[s]);
}

}  // namespace

BandTable band_table(const RibbonParams& params, std::span<const double> grid, double tol) {
  BandTable table = empty_table(params, grid);
  const auto columns = static_cast<long>(table.grid.size());
  const auto bands = static_cast<long>(table.values.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (long i = 0; i < columns; ++i) fill_column(table, static_cast<std::size_t>(i), tol);
#pragma omp parallel for schedule(dynamic, 1)
  for (long s = 0; s < bands; ++s) refine_band(table, static_cast<std::size_t>(s), tol);
  return table;
}

BandTable band_table_serial(const RibbonParams& params, std::span<const double> grid, double tol) {
  BandTable table = empty_table(params, grid);
  for (std::size_t i = 0; i < table.grid.size(); ++i) fill_column(table, i, tol);
  for (std::size_t s = 0; s < table.values.size(); ++s) refine_band(table, s, tol);
  return table;
}

Interval band_interval(int label, const RibbonParams& params, std::span<const double> grid, double tol) {
  std::vector<double> storage;
  const auto g = grid_or_default(grid, storage);
  const auto samples = band_function(label, params, g, tol);
  const int slot = slot_of_band(label, params.N());
  const auto f = [&params, slot, tol](double a) {
    return eigenvalue_at(jacobi_matrix(params, std::clamp(a, 0.0, 2.0)), slot, tol);
  };
  const auto e = refine_extrema(f, g, samples);
  return {e.lo, e.hi};
}

SpectrumReport summarize_bands(std::vector<BandSummary> bands, double merge_tol) {
  std::sort(bands.begin(), bands.end(), [](const auto& x, const auto& y) { return x.label < y.label; });
  SpectrumReport report;
  report.bands = bands;

  std::vector<Interval> dispersive;
  for (const auto& b : bands) {
    if (!b.is_flat) dispersive.push_back({b.lo, b.hi});
  }
  if (dispersive.empty()) return report;

  std::vector<Interval> by_lo = dispersive;
  std::sort(by_lo.begin(), by_lo.end(), [](const auto& x, const auto& y) { return x.lo < y.lo; });
  double reach = by_lo.front().hi;
  for (std::size_t i = 1; i < by_lo.size(); ++i) {
    if (by_lo[i].lo > reach + merge_tol) report.gaps.push_back({reach, by_lo[i].lo});
    reach = std::max(reach, by_lo[i].hi);
  }

  std::vector<double> cuts;
  for (const auto& b : dispersive) {
    cuts.push_back(b.lo);
    cuts.push_back(b.hi);
  }
  std::sort(cuts.begin(), cuts.end());
  // Edges closer than merge_tol are the same edge seen through bisection noise.
  cuts.erase(std::unique(cuts.begin(), cuts.end(), [&](double x, double y) { return y - x <= merge_tol; }),
             cuts.end());
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
    int count = 0;
    for (const auto& b : dispersive) count += (b.lo - merge_tol <= mid && mid <= b.hi + merge_tol) ? 1 : 0;
    if (count == 0) continue;
    auto& w = report.multiplicity_windows;
    if (!w.empty() && w.back().count == count && w.back().range.hi == cuts[i]) {
      w.back().range.hi = cuts[i + 1];
    } else {
      w.push_back({{cuts[i], cuts[i + 1]}, count});
    }
  }
  return report;
}

double default_flat_tol(const RibbonParams& params) { return 1e-10 * std::max(1.0, params.norm()); }

SpectrumReport spectrum_report(const BandTable& table, std::optional<double> flat_tol) {
  const double ftol = flat_tol.value_or(default_flat_tol(table.params));
  if (!(ftol > 0.0)) throw DomainError("flat tolerance must be positive");
  std::vector<BandSummary> bands;
  for (int label = -table.N(); label <= table.N(); ++label) {
    const auto& e = table.extrema[static_cast<std::size_t>(label + table.N())];
    bands.push_back({label, e.lo, e.hi, e.hi - e.lo <= ftol});
  }
  return summarize_bands(std::move(bands), ftol);
}

SpectrumReport spectrum_report(const RibbonParams& params, std::span<const double> grid,
                               std::optional<double> flat_tol, double tol) {
  std::vector<double> storage;
  return spectrum_report(band_table(params, grid_or_default(grid, storage), tol), flat_tol);
}

std::optional<int> flat_band_violation(const RibbonParams& params) {
  for (int k = 3; k <= params.p(); k += 2) {
    if (params.row(k) != params.row(1)) return k;
  }
  return std::nullopt;
}

bool flat_band_criterion(const RibbonParams& params) { return !flat_band_violation(params).has_value(); }

SpectrumReport unperturbed_spectrum(int N) {
  if (N < 1) throw DomainError("ribbon width N must be >= 1");
  std::vector<BandSummary> bands{{0, 0.0, 0.0, true}};
  for (int k = 1; k <= N; ++k) {
    const double lo = c_k(k, N) >= 0.0 ? s_k(k, N) : 1.0;
    const double hi = unperturbed_eigenvalue(k, 2.0, N);
    bands.push_back({k, lo, hi, false});
    bands.push_back({-k, -hi, -lo, false});
  }
  return summarize_bands(std::move(bands), 0.0);
}

}  // namespace ribbonband
