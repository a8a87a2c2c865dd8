#include "ribbonband/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ribbonband/errors.hpp"

namespace ribbonband {

double a_of_t(double t) {
  const double r = std::remainder(t, 2.0 * std::numbers::pi);
  return 2.0 * std::abs(std::cos(0.5 * r));
}

double c_k(int k, int N) { return std::cos(k * std::numbers::pi / (N + 1)); }
double s_k(int k, int N) { return std::sin(k * std::numbers::pi / (N + 1)); }

JacobiMatrix jacobi_matrix(const RibbonParams& params, double a) {
  if (!(a >= 0.0 && a <= 2.0)) {
    throw DomainError("off-diagonal parameter a = " + std::to_string(a) + " outside [0, 2]");
  }
  const int p = params.p();
  std::vector<double> off(static_cast<std::size_t>(p - 1));
  for (int j = 0; j < p - 1; ++j) off[static_cast<std::size_t>(j)] = (j % 2 == 0) ? a : 1.0;
  return JacobiMatrix(params.N(), a, {params.v().begin(), params.v().end()}, std::move(off));
}

std::vector<double> JacobiMatrix::to_dense() const {
  const auto n = static_cast<std::size_t>(p());
  std::vector<double> m(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] = diag_[i];
  for (std::size_t i = 0; i + 1 < n; ++i) {
    m[i * n + i + 1] = offdiag_[i];
    m[(i + 1) * n + i] = offdiag_[i];
  }
  return m;
}

Interval gershgorin(const JacobiMatrix& J) {
  const auto d = J.diag();
  const auto e = J.offdiag();
  const std::size_t n = d.size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(e[i - 1]);
    if (i + 1 < n) r += std::abs(e[i]);
    lo = std::min(lo, d[i] - r);
    hi = std::max(hi, d[i] + r);
  }
  // Widen by a few ulps of the scale so the end counts are exact.
  const double pad = 4.0 * std::numeric_limits<double>::epsilon() * std::max({1.0, std::abs(lo), std::abs(hi)});
  return {lo - pad, hi + pad};
}

namespace {

double pivot_floor(const JacobiMatrix& J) {
  double scale = 1.0;
  for (double x : J.diag()) scale = std::max(scale, std::abs(x));
  for (double x : J.offdiag()) scale = std::max(scale, x * x);
  return std::numeric_limits<double>::epsilon() * scale;
}

int sturm_count_with_floor(const JacobiMatrix& J, double lambda, double floor) {
  const auto d = J.diag();
  const auto e = J.offdiag();
  int count = 0;
  double pivot = d[0] - lambda;
  if (std::abs(pivot) < floor) pivot = -floor;
  if (pivot < 0.0) ++count;
  for (std::size_t i = 1; i < d.size(); ++i) {
    pivot = (d[i] - lambda) - e[i - 1] * e[i - 1] / pivot;
    if (std::abs(pivot) < floor) pivot = -floor;
    if (pivot < 0.0) ++count;
  }
  return count;
}

std::vector<double> decoupled_eigenvalues(const JacobiMatrix& J) {
  // a = 0: rows 2k, 2k+1 (1-based) form [[v_2k, 1], [1, v_2k+1]].
  const auto d = J.diag();
  std::vector<double> values{d[0]};
  for (std::size_t i = 1; i + 1 < d.size(); i += 2) {
    const double mean = 0.5 * (d[i] + d[i + 1]);
    const double radius = std::hypot(0.5 * (d[i] - d[i + 1]), 1.0);
    values.push_back(mean - radius);
    values.push_back(mean + radius);
  }
  std::sort(values.begin(), values.end());
  return values;
}

double bisect_slot(const JacobiMatrix& J, int slot, double tol, Interval bracket, double floor) {
  const double scale = std::max({1.0, std::abs(bracket.lo), std::abs(bracket.hi)});
  // Narrowing to tol*scale/8 keeps the returned midpoint well inside the tol*scale contract.
  const double width = 0.125 * tol * scale;
  double lo = bracket.lo;
  double hi = bracket.hi;
  for (int it = 0; it < kBisectionCap; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= width || mid <= lo || mid >= hi) return mid;
    if (sturm_count_with_floor(J, mid, floor) <= slot) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  throw NumericalError("Sturm bisection did not converge in " + std::to_string(kBisectionCap) +
                       " steps (tol " + std::to_string(tol) + ")");
}

}  // namespace

int sturm_count(const JacobiMatrix& J, double lambda) {
  return sturm_count_with_floor(J, lambda, pivot_floor(J));
}

double eigenvalue_at(const JacobiMatrix& J, int slot, double tol) {
  if (!(tol > 0.0)) throw DomainError("eigenvalue tolerance must be positive");
  if (slot < 0 || slot >= J.p()) throw DomainError("eigenvalue slot out of range");
  if (J.a() == 0.0) return decoupled_eigenvalues(J)[static_cast<std::size_t>(slot)];
  return bisect_slot(J, slot, tol, gershgorin(J), pivot_floor(J));
}

EigenList eigenvalues(const JacobiMatrix& J, double tol) {
  if (!(tol > 0.0)) throw DomainError("eigenvalue tolerance must be positive");
  if (J.a() == 0.0) return {J.N(), decoupled_eigenvalues(J)};
  const Interval bracket = gershgorin(J);
  const double floor = pivot_floor(J);
  std::vector<double> values(static_cast<std::size_t>(J.p()));
  for (int s = 0; s < J.p(); ++s) values[static_cast<std::size_t>(s)] = bisect_slot(J, s, tol, bracket, floor);
  return {J.N(), std::move(values)};
}

namespace {

// v_n with the bookkeeping convention v_{p+1} = v_1.
double row_or_wrap(const RibbonParams& params, int n) {
  return n == params.p() + 1 ? params.row(1) : params.row(n);
}

void require_positive_a(double a) {
  if (!(a > 0.0)) throw DomainError("transfer matrices need a > 0");
}

}  // namespace

Mat2 transfer_matrix(int k, double lambda, double a, const RibbonParams& params) {
  require_positive_a(a);
  if (k < 1 || k > params.N() + 1) throw DomainError("transfer step k must lie in 1..N+1");
  const double odd = lambda - params.row(2 * k - 1);
  const double even = lambda - row_or_wrap(params, 2 * k);
  return {-1.0 / a, odd / a, -even / a, (even * odd - a * a) / a};
}

Monodromy monodromy(int k, double lambda, double a, const RibbonParams& params) {
  if (k < 0 || k > params.N() + 1) throw DomainError("monodromy step k must lie in 0..N+1");
  require_positive_a(a);
  Mat2 m = Mat2::identity();
  for (int j = 1; j <= k; ++j) m = transfer_matrix(j, lambda, a, params) * m;
  return {k, m};
}

FundamentalSolutions fundamental_solutions(double lambda, double a, const RibbonParams& params) {
  require_positive_a(a);
  const int p = params.p();
  FundamentalSolutions out{std::vector<double>(static_cast<std::size_t>(p) + 2),
                           std::vector<double>(static_cast<std::size_t>(p) + 2)};
  const auto run = [&](std::vector<double>& y, double y0, double y1) {
    y[0] = y0;
    y[1] = y1;
    for (int k = 1; 2 * k <= p + 1; ++k) {
      const auto i = static_cast<std::size_t>(2 * k);
      y[i] = ((lambda - params.row(2 * k - 1)) * y[i - 1] - y[i - 2]) / a;
      if (2 * k + 1 <= p + 1) y[i + 1] = (lambda - params.row(2 * k)) * y[i] - a * y[i - 1];
    }
  };
  run(out.theta, 1.0, 0.0);
  run(out.phi, 0.0, 1.0);
  return out;
}

double char_poly_R(double lambda, double a, const RibbonParams& params) {
  // (even, odd) = a^k (phi_2k, phi_2k+1).
  double even = 0.0;
  double odd = 1.0;
  for (int k = 1; k <= params.N() + 1; ++k) {
    const double next_even = -even + (lambda - params.row(2 * k - 1)) * odd;
    if (k == params.N() + 1) return next_even;
    odd = (lambda - params.row(2 * k)) * next_even - a * a * odd;
    even = next_even;
  }
  return even;  // unreachable
}

double unperturbed_eigenvalue(int k, double a, int N) {
  if (k == 0) return 0.0;
  const int m = std::abs(k);
  const double d = a - c_k(m, N);
  const double s = s_k(m, N);
  const double value = std::sqrt(d * d + s * s);
  return k > 0 ? value : -value;
}

}  // namespace ribbonband
