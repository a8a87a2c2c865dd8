#pragma once

#include <functional>
#include <span>
#include <vector>

#include "ribbonband/params.hpp"

namespace ribbonband {

inline constexpr int kJacobiSweepCap = 50;
inline constexpr int kOracleMaxRows = 500;

/// Eigenvalues of a dense symmetric matrix (row-major, n x n) by cyclic
/// Jacobi rotations, sorted ascending. Throws DomainError on asymmetry
/// and NumericalError when the sweep cap is hit.
std::vector<double> dense_symmetric_eig(std::span<const double> matrix, int n);

/// Spectrum of the L-cell periodic ribbon section, through the dense solver.
std::vector<double> periodic_ribbon_spectrum(const RibbonParams& params, int cells);

/// Union over t_j = 2 pi j / L of the eigenvalues of J_{a(t_j)}, sorted.
/// Quasimomenta are processed in parallel.
std::vector<double> bloch_union_spectrum(const RibbonParams& params, int cells);
std::vector<double> bloch_union_spectrum_serial(const RibbonParams& params, int cells);

/// Same union with a caller-supplied fibre spectrum a -> eigenvalues.
std::vector<double> bloch_union_spectrum_with(const RibbonParams& params, int cells,
                                              const std::function<std::vector<double>(double)>& fibre);

struct MultisetReport {
  double max_pairwise_deviation;
  int unmatched_count;
  int size;
};

/// Pairs the sorted lists index by index; every pair further apart than
/// tol contributes one unmatched element from each side, and surplus
/// elements of the longer list are unmatched.
MultisetReport compare_multisets(std::span<const double> A, std::span<const double> B, double tol);

}  // namespace ribbonband
