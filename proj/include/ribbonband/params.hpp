#pragma once

#include <span>
#include <vector>

namespace ribbonband {

// Index convention used throughout the library. The lattice rows are
// numbered k = 1..p in the model (p = 2N+1, rows 0 and p+1 are the
// Dirichlet boundary). Storage is 0-based: lattice row k lives at slot k-1.
// Eigenvalue labels run over {-N, ..., N}; label j lives at slot j+N.

/// Ribbon width and transverse potential. `v[k-1]` is the on-site energy
/// of lattice row k; it is constant along the ribbon axis.
class RibbonParams {
 public:
  RibbonParams(int N, std::vector<double> v);

  /// Zero potential of width N.
  static RibbonParams zero(int N);

  int N() const noexcept { return N_; }
  int p() const noexcept { return 2 * N_ + 1; }
  std::span<const double> v() const noexcept { return v_; }

  /// On-site energy of 1-based lattice row k.
  double row(int k) const { return v_.at(static_cast<std::size_t>(k - 1)); }

  /// Potential scaled by t (strong-field coupling t*V).
  RibbonParams scaled(double t) const;
  /// Potential shifted by c on every row.
  RibbonParams shifted(double c) const;

  double norm() const;

 private:
  int N_;
  std::vector<double> v_;
};

/// Row slot for a 1-based lattice row.
constexpr int slot_of_row(int k) noexcept { return k - 1; }
/// Eigenvalue slot for a band label in {-N..N}.
constexpr int slot_of_band(int label, int N) noexcept { return label + N; }

}  // namespace ribbonband
