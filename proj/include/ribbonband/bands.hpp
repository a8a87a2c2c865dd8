#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ribbonband/jacobi.hpp"
#include "ribbonband/params.hpp"

namespace ribbonband {

inline constexpr int kDefaultGridPoints = 401;
inline constexpr double kEdgeATol = 1e-10;

/// `points` equally spaced values of a in [0, 2], endpoints included.
std::vector<double> uniform_grid(int points = kDefaultGridPoints);

/// Located minimum and maximum of a sampled band function.
struct BandExtrema {
  double a_min;
  double lo;
  double a_max;
  double hi;
};

/// Grid scan followed by golden-section refinement inside the grid cell
/// pair around each discrete extremum, to a-resolution a_tol.
BandExtrema refine_extrema(const std::function<double(double)>& f, std::span<const double> grid,
                           std::span<const double> samples, double a_tol = kEdgeATol);

/// lambda_label(a_i) for every grid point.
std::vector<double> band_function(int label, const RibbonParams& params, std::span<const double> grid,
                                  double tol = kDefaultEigenTol);

/// Band functions on a grid. values[label + N][i] = lambda_label(grid[i]).
struct BandTable {
  RibbonParams params;
  std::vector<double> grid;
  std::vector<std::vector<double>> values;
  std::vector<BandExtrema> extrema;

  int N() const noexcept { return params.N(); }
  std::span<const double> band(int label) const { return values.at(static_cast<std::size_t>(label + N())); }
};

/// Grid columns are filled in parallel (OpenMP); the result is identical
/// to band_table_serial.
BandTable band_table(const RibbonParams& params, std::span<const double> grid, double tol = kDefaultEigenTol);
BandTable band_table_serial(const RibbonParams& params, std::span<const double> grid,
                            double tol = kDefaultEigenTol);

/// sigma_label = lambda_label([0, 2]).
Interval band_interval(int label, const RibbonParams& params, std::span<const double> grid = {},
                       double tol = kDefaultEigenTol);

struct BandSummary {
  int label;
  double lo;
  double hi;
  bool is_flat;
};

/// Part of the spectrum covered by exactly `count` bands of J_a. The
/// operator H sees each interior point of a band twice (t and -t map to
/// the same a), so its multiplicity is 2 * count.
struct MultiplicityWindow {
  Interval range;
  int count;
};

/// Band intervals, gaps and coverage counts. Gaps and windows are taken
/// over the non-flat bands; flat bands are isolated eigenvalues and may
/// sit inside a gap (v = 0 has {0} inside (-s_1, s_1)).
struct SpectrumReport {
  std::vector<BandSummary> bands;
  std::vector<Interval> gaps;
  std::vector<MultiplicityWindow> multiplicity_windows;
};

/// Derives gaps and multiplicity windows from band intervals; band edges
/// within merge_tol of each other are treated as one edge.
SpectrumReport summarize_bands(std::vector<BandSummary> bands, double merge_tol = 0.0);

/// Default flat tolerance 1e-10 max(1, ||v||).
double default_flat_tol(const RibbonParams& params);

SpectrumReport spectrum_report(const RibbonParams& params, std::span<const double> grid,
                               std::optional<double> flat_tol = std::nullopt, double tol = kDefaultEigenTol);
SpectrumReport spectrum_report(const BandTable& table, std::optional<double> flat_tol = std::nullopt);

/// True iff v_{2k+1} == v_1 for every k (exact comparison).
bool flat_band_criterion(const RibbonParams& params);
/// 1-based row of the first odd entry differing from v_1, if any.
std::optional<int> flat_band_violation(const RibbonParams& params);

/// Closed-form spectrum at v = 0: sigma_0 = {0}; for k > 0
/// sigma_k = [s_k, lambda_k(2)] if c_k >= 0, [1, lambda_k(2)] otherwise;
/// sigma_{-k} = -sigma_k.
SpectrumReport unperturbed_spectrum(int N);

}  // namespace ribbonband
