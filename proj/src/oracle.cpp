#include "ribbonband/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ribbonband/errors.hpp"
#include "ribbonband/jacobi.hpp"
#include "ribbonband/lattice.hpp"

namespace ribbonband {

std::vector<double> dense_symmetric_eig(std::span<const double> matrix, int n) {
  if (n < 1 || matrix.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
    throw DomainError("dense matrix size mismatch");
  }
  if (n > kDefaultMaxRows) throw DomainError("dense matrix larger than the size cap");
  const auto N = static_cast<std::size_t>(n);
  std::vector<double> m(matrix.begin(), matrix.end());

  double scale = 0.0;
  double frob = 0.0;
  for (double x : m) {
    scale = std::max(scale, std::abs(x));
    frob += x * x;
  }
  frob = std::sqrt(frob);
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = i + 1; j < N; ++j) {
      if (std::abs(m[i * N + j] - m[j * N + i]) > 1e-12 * std::max(1.0, scale)) {
        throw DomainError("matrix is not symmetric at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      }
      m[j * N + i] = m[i * N + j];
    }
  }

  const auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      for (std::size_t j = i + 1; j < N; ++j) s += 2.0 * m[i * N + j] * m[i * N + j];
    }
    return std::sqrt(s);
  };

  bool converged = false;
  for (int sweep = 0; sweep <= kJacobiSweepCap; ++sweep) {
    if (off_norm() <= 1e-12 * frob) {
      converged = true;
      break;
    }
    if (sweep == kJacobiSweepCap) break;
    for (std::size_t p = 0; p + 1 < N; ++p) {
      for (std::size_t q = p + 1; q < N; ++q) {
        const double apq = m[p * N + q];
        if (apq == 0.0) continue;
        const double theta = (m[q * N + q] - m[p * N + p]) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < N; ++k) {
          const double mkp = m[k * N + p];
          const double mkq = m[k * N + q];
          m[k * N + p] = c * mkp - s * mkq;
          m[k * N + q] = s * mkp + c * mkq;
        }
        for (std::size_t k = 0; k < N; ++k) {
          const double mpk = m[p * N + k];
          const double mqk = m[q * N + k];
          m[p * N + k] = c * mpk - s * mqk;
          m[q * N + k] = s * mpk + c * mqk;
        }
        m[p * N + q] = 0.0;
        m[q * N + p] = 0.0;
      }
    }
  }
  if (!converged) throw NumericalError("Jacobi rotations did not converge in " + std::to_string(kJacobiSweepCap) + " sweeps");

  std::vector<double> values(N);
  for (std::size_t i = 0; i < N; ++i) values[i] = m[i * N + i];
  std::sort(values.begin(), values.end());
  return values;
}

std::vector<double> periodic_ribbon_spectrum(const RibbonParams& params, int cells) {
  if (cells * params.p() > kOracleMaxRows) {
    throw DomainError("oracle section L*p = " + std::to_string(cells * params.p()) + " exceeds " +
                      std::to_string(kOracleMaxRows));
  }
  const auto H = build_ribbon(params, cells, Boundary::Periodic);
  return dense_symmetric_eig(H.matrix.to_dense(), H.matrix.size());
}

namespace {

void check_cells(int cells) {
  if (cells < 3) throw DomainError("Bloch union needs L >= 3 quasimomenta");
}

double quasimomentum(int j, int cells) { return 2.0 * std::numbers::pi * j / cells; }

}  // namespace

std::vector<double> bloch_union_spectrum_with(const RibbonParams& params, int cells,
                                              const std::function<std::vector<double>(double)>& fibre) {
  check_cells(cells);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(cells * params.p()));
  for (int j = 0; j < cells; ++j) {
    const auto values = fibre(a_of_t(quasimomentum(j, cells)));
    out.insert(out.end(), values.begin(), values.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> bloch_union_spectrum_serial(const RibbonParams& params, int cells) {
  return bloch_union_spectrum_with(params, cells, [&params](double a) {
    const auto list = eigenvalues(jacobi_matrix(params, a));
    return std::vector<double>(list.values().begin(), list.values().end());
  });
}

std::vector<double> bloch_union_spectrum(const RibbonParams& params, int cells) {
  check_cells(cells);
  const auto p = static_cast<std::size_t>(params.p());
  std::vector<double> out(static_cast<std::size_t>(cells) * p);
#pragma omp parallel for schedule(static)
  for (int j = 0; j < cells; ++j) {
    const auto list = eigenvalues(jacobi_matrix(params, a_of_t(quasimomentum(j, cells))));
    std::copy(list.values().begin(), list.values().end(), out.begin() + static_cast<std::ptrdiff_t>(j * p));
  }
  std::sort(out.begin(), out.end());
  return out;
}

MultisetReport compare_multisets(std::span<const double> A, std::span<const double> B, double tol) {
  std::vector<double> a(A.begin(), A.end());
  std::vector<double> b(B.begin(), B.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const std::size_t common = std::min(a.size(), b.size());
  MultisetReport r{0.0, static_cast<int>(std::max(a.size(), b.size()) - common),
                   static_cast<int>(std::max(a.size(), b.size()))};
  for (std::size_t i = 0; i < common; ++i) {
    const double d = std::abs(a[i] - b[i]);
    r.max_pairwise_deviation = std::max(r.max_pairwise_deviation, d);
    if (d > tol) r.unmatched_count += 2;
  }
  return r;
}

}  // namespace ribbonband
