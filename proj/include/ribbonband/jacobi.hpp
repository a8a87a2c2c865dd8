#pragma once

#include <array>
#include <span>
#include <vector>

#include "ribbonband/params.hpp"

namespace ribbonband {

inline constexpr double kDefaultEigenTol = 1e-12;
inline constexpr int kBisectionCap = 200;

/// Off-diagonal parameter a = 2|cos(t/2)| of the Bloch fibre at quasimomentum t.
double a_of_t(double t);

/// cos(k pi / (N+1)) and sin(k pi / (N+1)).
double c_k(int k, int N);
double s_k(int k, int N);

/// The p x p Jacobi matrix J_a = J_a^0 + diag(v). Off-diagonals alternate
/// a, 1, a, 1, ... starting from the (1,2) entry; the last one is 1.
class JacobiMatrix {
 public:
  int N() const noexcept { return N_; }
  int p() const noexcept { return 2 * N_ + 1; }
  double a() const noexcept { return a_; }
  std::span<const double> diag() const noexcept { return diag_; }
  std::span<const double> offdiag() const noexcept { return offdiag_; }

  /// Dense row-major copy, for oracles.
  std::vector<double> to_dense() const;

  friend JacobiMatrix jacobi_matrix(const RibbonParams& params, double a);

 private:
  JacobiMatrix(int N, double a, std::vector<double> diag, std::vector<double> offdiag)
      : N_(N), a_(a), diag_(std::move(diag)), offdiag_(std::move(offdiag)) {}

  int N_;
  double a_;
  std::vector<double> diag_;
  std::vector<double> offdiag_;
};

/// Throws DomainError unless a is in [0, 2].
JacobiMatrix jacobi_matrix(const RibbonParams& params, double a);

/// Ascending eigenvalues labelled -N..N.
class EigenList {
 public:
  EigenList(int N, std::vector<double> values) : N_(N), values_(std::move(values)) {}

  int N() const noexcept { return N_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](int label) const { return values_.at(static_cast<std::size_t>(label + N_)); }

 private:
  int N_;
  std::vector<double> values_;
};

struct Interval {
  double lo;
  double hi;
};

Interval gershgorin(const JacobiMatrix& J);

/// #{eigenvalues of J strictly below lambda}, from the LDL^T inertia.
int sturm_count(const JacobiMatrix& J, double lambda);

/// All p eigenvalues by Sturm bisection. At a = 0 the matrix splits into
/// diag(v_1) and N blocks [[v_2k, 1], [1, v_2k+1]], solved in closed form.
EigenList eigenvalues(const JacobiMatrix& J, double tol = kDefaultEigenTol);

/// Eigenvalue at ascending position `slot` (0..p-1).
double eigenvalue_at(const JacobiMatrix& J, int slot, double tol = kDefaultEigenTol);

struct Mat2 {
  // [[m00, m01], [m10, m11]]
  double m00, m01, m10, m11;

  double det() const noexcept { return m00 * m11 - m01 * m10; }
  double trace() const noexcept { return m00 + m11; }
  Mat2 operator*(const Mat2& o) const noexcept {
    return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
            m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
  }
  static constexpr Mat2 identity() noexcept { return {1.0, 0.0, 0.0, 1.0}; }
};

/// One-step transfer matrix T_k mapping (y_{2k-2}, y_{2k-1}) to (y_{2k}, y_{2k+1}),
/// 1 <= k <= N+1. Row p+1 reads v_{p+1} = v_1. Throws DomainError when a <= 0.
Mat2 transfer_matrix(int k, double lambda, double a, const RibbonParams& params);

/// M_k = T_k ... T_1 = [[theta_2k, phi_2k], [theta_2k+1, phi_2k+1]].
struct Monodromy {
  int k;
  Mat2 entries;
};

Monodromy monodromy(int k, double lambda, double a, const RibbonParams& params);

/// Solutions of (J_a - lambda) y = 0 in the interior rows, indexed 0..p+1.
/// phi starts (0, 1); theta starts (1, 0) so that M_0 is the identity.
struct FundamentalSolutions {
  std::vector<double> theta;
  std::vector<double> phi;
};

FundamentalSolutions fundamental_solutions(double lambda, double a, const RibbonParams& params);

/// R(lambda, a, v) = a^{N+1} phi_{p+1}(lambda, a, v), evaluated through the
/// a-cleared recursion so that a = 0 is a regular point. Monic of degree p
/// in lambda; equals det(lambda - J_a).
double char_poly_R(double lambda, double a, const RibbonParams& params);

/// Zero-potential band function: sign(k) sqrt(a^2 - 2a c_|k| + 1), and 0 for k = 0.
double unperturbed_eigenvalue(int k, double a, int N);

}  // namespace ribbonband
