#include <doctest.h>

#include <random>

#include "../support/oracles.hpp"
#include "ribbonband/errors.hpp"
#include "ribbonband/lattice.hpp"

using namespace ribbonband;

namespace {

std::vector<double> reference_dense(const RibbonParams& params, int cells, Boundary boundary) {
  const int N = params.N();
  const int p = params.p();
  const int size = cells * p;
  std::vector<double> m(static_cast<std::size_t>(size * size), 0.0);
  for (int n = 0; n < cells; ++n) {
    for (int k = 1; k <= p; ++k) {
      const int i = n * p + k - 1;
      m[i * size + i] += params.row(k);
      for (auto [nn, kk] : oracle::lattice_neighbours(n, k, N)) {
        if (boundary == Boundary::Open && (nn < 0 || nn >= cells)) continue;
        nn = ((nn % cells) + cells) % cells;
        m[i * size + nn * p + kk - 1] += 1.0;
      }
    }
  }
  return m;
}

}  // namespace

TEST_CASE("ribbon matrix matches the neighbour rule") {
  std::mt19937_64 rng(11);
  for (int N = 1; N <= 3; ++N) {
    for (int cells : {2, 3, 5}) {
      for (auto boundary : {Boundary::Open, Boundary::Periodic}) {
        if (boundary == Boundary::Periodic && cells < 3) continue;
        const RibbonParams params(N, oracle::random_vector(rng, 2 * N + 1, -1, 1));
        const auto H = build_ribbon(params, cells, boundary);
        CHECK(H.matrix.to_dense() == reference_dense(params, cells, boundary));
        CHECK(H.matrix.is_symmetric());
      }
    }
  }
}

TEST_CASE("edge count for N=1, two open cells") {
  // Two cells of the path 1-2-3 plus one bond (0,3)-(1,2).
  const auto H = build_ribbon(RibbonParams::zero(1), 2, Boundary::Open);
  CHECK(H.matrix.size() == 6);
  CHECK(H.matrix.edge_count() == 5);
  CHECK(H.matrix.at(H.index(0, 2), H.index(1, 1)) == 1.0);
}

TEST_CASE("vertex degrees on a periodic section") {
  const auto H = build_ribbon(RibbonParams::zero(2), 3, Boundary::Periodic);
  const int expected[] = {2, 3, 3, 3, 1};
  for (int n = 0; n < 3; ++n) {
    for (int k = 1; k <= 5; ++k) CHECK(H.matrix.row_abs_sum(H.index(n, k)) == expected[k - 1]);
  }
}

TEST_CASE("uniform potential is a diagonal shift") {
  const auto H0 = build_ribbon(RibbonParams::zero(1), 4, Boundary::Periodic).matrix.to_dense();
  const auto H5 = build_ribbon(RibbonParams(1, {5, 5, 5}), 4, Boundary::Periodic).matrix.to_dense();
  const int size = 12;
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) CHECK(H5[i * size + j] - H0[i * size + j] == (i == j ? 5.0 : 0.0));
  }
}

TEST_CASE("apply_hamiltonian") {
  const auto H = build_ribbon(RibbonParams::zero(1), 5, Boundary::Open);
  const RibbonState zero(1, 5, Boundary::Open);
  CHECK(apply_hamiltonian(H, zero).max_norm() == 0.0);

  RibbonState delta(1, 5, Boundary::Open);
  delta.at(2, 2) = 1.0;
  const auto out = apply_hamiltonian(H, delta);
  for (int n = 0; n < 5; ++n) {
    for (int k = 1; k <= 3; ++k) {
      const bool neighbour = (n == 2 && k == 1) || (n == 3 && k == 1) || (n == 2 && k == 3);
      CHECK(out(n, k) == (neighbour ? 1.0 : 0.0));
    }
  }
  CHECK(out(-1, 1) == 0.0);
  CHECK(out(2, 4) == 0.0);
}

TEST_CASE("build_ribbon rejects bad sizes") {
  CHECK_THROWS_AS(build_ribbon(RibbonParams::zero(1), 1, Boundary::Open), DomainError);
  CHECK_THROWS_AS(build_ribbon(RibbonParams::zero(1), 2, Boundary::Periodic), DomainError);
  CHECK_THROWS_AS(build_ribbon(RibbonParams::zero(3), 2000, Boundary::Open), DomainError);
  CHECK_THROWS_AS(RibbonParams(2, {1, 2, 3}), DomainError);
}

TEST_CASE("flat-band vector coefficients") {
  const auto psi1 = flat_band_vector(1, 0);
  CHECK(psi1.at(0, 1) == 1);
  CHECK(psi1.at(0, 3) == -1);
  CHECK(psi1.at(-1, 3) == -1);
  CHECK(psi1.at(-1, 1) == 0);
  CHECK(psi1.at(0, 2) == 0);

  const auto psi2 = flat_band_vector(2, 0);
  CHECK(psi2.row_by_cell(2) == std::vector<std::int64_t>{1, 2, 1});
  CHECK(psi2.row_by_cell(1) == std::vector<std::int64_t>{-1, -1});

  const auto shifted = flat_band_vector(1, 7);
  for (int n = -3; n <= 1; ++n) {
    for (int k = 1; k <= 3; ++k) CHECK(shifted.at(n + 7, k) == psi1.at(n, k));
  }

  for (int N = 1; N <= 12; ++N) {
    const auto psi = flat_band_vector(N, 0);
    for (int j = 0; j <= N; ++j) {
      for (int i = 0; i <= j; ++i) {
        const std::int64_t sign = (j % 2 == 0) ? 1 : -1;
        CHECK(psi.at(-i, 2 * j + 1) == sign * oracle::binomial(j, i));
      }
    }
  }
}

TEST_CASE("flat-band eigenfunctions") {
  const auto psi = flat_band_vector(1, 3);
  CHECK(verify_flat_eigen(RibbonParams::zero(1), psi, 8) == 0.0);
  CHECK(verify_flat_eigen_exact(RibbonParams::zero(1), psi, 8) == 0.0);

  const RibbonParams flat3(3, {0.25, 1.7, 0.25, -3.0, 0.25, 0.5, 0.25});
  CHECK(verify_flat_eigen_exact(flat3, flat_band_vector(3, 5), 12) == 0.0);
  CHECK(verify_flat_eigen(flat3, flat_band_vector(3, 5), 12) <= 1e-14);

  const RibbonParams broken(1, {0, 0, 0.1});
  CHECK(verify_flat_eigen(broken, psi, 8) >= 0.05);
  CHECK(verify_flat_eigen_exact(broken, psi, 8) >= 0.05);

  CHECK_THROWS_AS(embed(flat_band_vector(2, 0), 6, Boundary::Open), DomainError);
  CHECK_NOTHROW(embed(flat_band_vector(2, 0), 6, Boundary::Periodic));
  CHECK(verify_flat_eigen(flat3, flat_band_vector(3, 0), 6, Boundary::Periodic) <= 1e-14);
}

TEST_CASE("flat-band basis expansion") {
  const RibbonParams params(2, {0.3, -1.0, 0.3, 2.0, 0.3});
  const auto unit = embed(flat_band_vector(2, 2), 8, Boundary::Open);
  const auto h_unit = expand_in_flat_basis(params, unit);
  for (int m = 0; m < 8; ++m) CHECK(h_unit[m] == (m == 2 ? 1.0 : 0.0));

  std::vector<double> coeffs(9, 0.0);
  coeffs[3] = 2.0;
  coeffs[5] = -1.0;
  const auto f = reconstruct_from_flat_basis(2, coeffs, 9, Boundary::Periodic);
  const auto h = expand_in_flat_basis(params, f);
  CHECK(h == coeffs);

  RibbonState bad(2, 8, Boundary::Open);
  bad.at(3, 2) = 1.0;
  CHECK_THROWS_AS(expand_in_flat_basis(params, bad), DomainError);

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::int64_t> coef(-9, 9);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<std::int64_t> c(8, 0);
    for (int m = 0; m <= 5; ++m) c[m] = coef(rng);
    const auto values = flat_basis_combination(2, c, 8, Boundary::Periodic);
    CHECK(expand_in_flat_basis_exact(2, values, 8) == c);
  }
}
