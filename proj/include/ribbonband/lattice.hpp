#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ribbonband/params.hpp"

namespace ribbonband {

enum class Boundary { Periodic, Open };

/// Real symmetric matrix in compressed-row form. Immutable once built.
class SparseSymmetric {
 public:
  struct Entry {
    int row;
    int col;
    double value;
  };

  /// Builds from (row, col, value) triplets; duplicates are summed.
  SparseSymmetric(int size, std::vector<Entry> entries);

  int size() const noexcept { return size_; }
  std::size_t nonzeros() const noexcept { return cols_.size(); }

  double at(int row, int col) const;
  /// Number of distinct undirected off-diagonal couplings.
  std::size_t edge_count() const;
  double row_abs_sum(int row, bool include_diagonal = false) const;
  bool is_symmetric() const;

  void apply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> to_dense() const;  // row-major size*size

 private:
  int size_;
  std::vector<int> row_start_;
  std::vector<int> cols_;
  std::vector<double> values_;
};

/// Real-space Hamiltonian on an L-cell section of the ribbon.
struct RibbonHamiltonian {
  int N;
  int cells;
  Boundary boundary;
  SparseSymmetric matrix;

  int p() const noexcept { return 2 * N + 1; }
  /// Matrix index of cell n, 1-based lattice row k.
  int index(int n, int k) const noexcept { return n * p() + (k - 1); }
};

/// Wavefunction amplitudes f_{n,k} on an L-cell section.
class RibbonState {
 public:
  RibbonState(int N, int cells, Boundary boundary);
  RibbonState(int N, int cells, Boundary boundary, std::vector<double> values);

  int N() const noexcept { return N_; }
  int p() const noexcept { return 2 * N_ + 1; }
  int cells() const noexcept { return cells_; }
  Boundary boundary() const noexcept { return boundary_; }

  /// Amplitude at cell n, 1-based row k. Rows 0 and p+1 read as zero; cells
  /// outside the section read as zero (open) or wrap (periodic).
  double operator()(int n, int k) const;
  double& at(int n, int k);

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  double max_norm() const;

 private:
  int N_;
  int cells_;
  Boundary boundary_;
  std::vector<double> values_;
};

inline constexpr int kDefaultMaxRows = 10000;

/// H = Laplacian + V on an L-cell section. Periodic sections wrap the
/// axial couplings; Open sections drop them.
RibbonHamiltonian build_ribbon(const RibbonParams& params, int cells, Boundary boundary,
                               int max_rows = kDefaultMaxRows);

RibbonState apply_hamiltonian(const RibbonHamiltonian& H, const RibbonState& f);

/// Compactly supported flat-band eigenfunction anchored at cell m.
/// Row 2k+1 holds (-I-S)^k e_m with (Sh)_n = h_{n+1}: the entry at cell
/// m-j is (-1)^k C(k, j). Even rows are zero.
class FlatBandVector {
 public:
  int anchor() const noexcept { return m_; }
  int N() const noexcept { return N_; }
  int support_begin() const noexcept { return m_ - N_; }
  int support_end() const noexcept { return m_; }

  /// Integer amplitude at cell n, 1-based lattice row k.
  std::int64_t at(int n, int k) const;
  /// Coefficients of odd row 2k+1 ordered by increasing cell index.
  std::vector<std::int64_t> row_by_cell(int k) const;

  friend FlatBandVector flat_band_vector(int N, int m);

 private:
  FlatBandVector(int N, int m, std::vector<std::vector<std::int64_t>> rows)
      : N_(N), m_(m), rows_(std::move(rows)) {}

  int N_;
  int m_;
  // rows_[k][j]: coefficient on row 2k+1 at cell m-j.
  std::vector<std::vector<std::int64_t>> rows_;
};

FlatBandVector flat_band_vector(int N, int m);

/// Places psi on an L-cell section (Periodic wraps, Open requires the
/// support to fit inside [0, L)).
RibbonState embed(const FlatBandVector& psi, int cells, Boundary boundary);

/// max |(H - v_1) psi| on an L-cell section, computed in floating point
/// through the sparse Hamiltonian.
double verify_flat_eigen(const RibbonParams& params, const FlatBandVector& psi, int cells,
                         Boundary boundary = Boundary::Open);

/// Same residual with the Laplacian part evaluated in integer arithmetic.
/// The potential part (v_k - v_1) psi only touches odd rows and is exactly
/// zero when the flat-band criterion holds.
double verify_flat_eigen_exact(const RibbonParams& params, const FlatBandVector& psi, int cells,
                               Boundary boundary = Boundary::Open);

/// Coordinates of f in the basis {psi^m}: h_m = f_{m,1}, m = 0..L-1.
/// Throws DomainError when ||(H - v_1) f|| > tol ||f||.
std::vector<double> expand_in_flat_basis(const RibbonParams& params, const RibbonState& f,
                                         double tol = 1e-10);

/// sum_m h_m psi^m restricted to the section.
RibbonState reconstruct_from_flat_basis(int N, std::span<const double> coefficients, int cells,
                                        Boundary boundary);

/// Row-1 readout of an integer state; inverse of flat_basis_combination.
std::vector<std::int64_t> expand_in_flat_basis_exact(int N, std::span<const std::int64_t> values,
                                                     int cells);

/// Integer version of the combination, indexed like RibbonState::values().
std::vector<std::int64_t> flat_basis_combination(int N, std::span<const std::int64_t> coefficients,
                                                 int cells, Boundary boundary);

}  // namespace ribbonband
