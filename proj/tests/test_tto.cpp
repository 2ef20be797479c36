#include <catch2/catch_amalgamated.hpp>
#include <map>

#include "msk/instances.hpp"
#include "msk/rng.hpp"
#include "msk/tto.hpp"

using namespace msk;

namespace {
constexpr int kGrid = 512;
}

TEST_CASE("identity symbol between monomial spaces") {
  const ModelSpaceBasis b1 = basis(monomial(3, 1, kGrid));
  const ModelSpaceBasis b2 = basis(monomial(3, 1, kGrid));
  const TTOMatrix a =
      build(b1, b2, CircleFn::constant(CMat::Identity(1, 1), kGrid));
  CHECK(operator_norm(CMat(a.mat - CMat::Identity(3, 3))) < 1e-12);

  // Shrinking the codomain truncates: the matrix is [I | 0].
  const ModelSpaceBasis small = basis(monomial(2, 2, kGrid));
  const ModelSpaceBasis big = basis(monomial(3, 2, kGrid));
  const TTOMatrix t =
      build(big, small, CircleFn::constant(CMat::Identity(2, 2), kGrid));
  REQUIRE(t.mat.rows() == 4);
  REQUIRE(t.mat.cols() == 6);
  CHECK(operator_norm(CMat(t.mat.leftCols(4) - CMat::Identity(4, 4))) < 1e-12);
  CHECK(operator_norm(CMat(t.mat.rightCols(2))) < 1e-12);
}

TEST_CASE("build is linear in the symbol") {
  Rng rng(80);
  const ModelSpaceBasis b1 = basis(monomial(2, 2, kGrid));
  const ModelSpaceBasis b2 = basis(monomial(2, 2, kGrid));
  const CircleFn f = CircleFn::from_fourier(rng.laurent(2, 2), kGrid);
  const CircleFn g = CircleFn::from_fourier(rng.laurent(2, 2), kGrid);
  const Complex alpha(0.3, -1.1);
  const CMat lhs = build(b1, b2, add(scale(f, alpha), g)).mat;
  const CMat rhs = alpha * build(b1, b2, f).mat + build(b1, b2, g).mat;
  CHECK(operator_norm(CMat(lhs - rhs)) < 1e-10);
}

TEST_CASE("block_toeplitz layout") {
  Rng rng(81);
  const CMat d0 = rng.gaussian_matrix(2, 2);
  const CMat d1 = rng.gaussian_matrix(2, 2);

  // Single block.
  CHECK(operator_norm(CMat(block_toeplitz(1, 1, {{0, d0}}) - d0)) < 1e-15);

  // One block row: [Delta_0 Delta_1].
  const CMat row = block_toeplitz(2, 1, {{0, d0}, {1, d1}});
  REQUIRE(row.rows() == 2);
  REQUIRE(row.cols() == 4);
  CHECK(operator_norm(CMat(row.leftCols(2) - d0)) < 1e-15);
  CHECK(operator_norm(CMat(row.rightCols(2) - d1)) < 1e-15);

  CHECK_THROWS_AS(block_toeplitz(1, 2, {{0, d0}}), BadShape);
}

TEST_CASE("build equals block_toeplitz on monomial spaces") {
  Rng rng(82);
  for (const auto& [n, m, d] : {std::tuple{3, 2, 2}, {2, 1, 1}, {4, 4, 1},
                                {3, 3, 3}, {4, 2, 2}}) {
    const ModelSpaceBasis b1 = basis(monomial(n, d, kGrid));
    const ModelSpaceBasis b2 = basis(monomial(m, d, kGrid));
    std::map<int, CMat> delta;
    std::map<int, CMat> phi_coeffs;
    for (int s = -(m - 1); s <= n - 1; ++s) {
      delta[s] = rng.gaussian_matrix(d, d);
      phi_coeffs[-s] = delta[s];  // the symbol reads sum_s z^{-s} Delta_s
    }
    const TTOMatrix a = build(b1, b2, CircleFn::from_fourier(phi_coeffs, kGrid));
    const CMat direct = block_toeplitz(n, m, delta);
    CHECK(operator_norm(CMat(a.mat - direct)) < 1e-10);
  }
}

TEST_CASE("adjoint operator carries the adjoint symbol") {
  Rng rng(83);

  // Hermitian constant symbol on a symmetric pair gives a Hermitian matrix.
  const ModelSpaceBasis b = basis(monomial(2, 2, kGrid));
  CMat h = rng.gaussian_matrix(2, 2);
  h = CMat(0.5 * (h + h.adjoint()));
  const TTOMatrix a = build(b, b, CircleFn::constant(h, kGrid));
  CHECK(operator_norm(CMat(a.mat - a.mat.adjoint())) < 1e-10);
  CHECK(adjoint_pair_check(b, b, CircleFn::constant(h, kGrid)) <= 1e-10);

  // Generic seeded symbol on monomial spaces.
  const ModelSpaceBasis b1 = basis(monomial(3, 2, kGrid));
  const CircleFn phi = CircleFn::from_fourier(rng.laurent(2, 3), kGrid);
  CHECK(adjoint_pair_check(b1, b, phi) <= 1e-9);

  // phi = z I: the adjoint is the operator with symbol z^{-1} I.
  std::map<int, CMat> zc{{1, CMat::Identity(2, 2)}};
  std::map<int, CMat> zb{{-1, CMat::Identity(2, 2)}};
  const CMat left = build(b1, b, CircleFn::from_fourier(zc, kGrid)).mat;
  const CMat right = build(b, b1, CircleFn::from_fourier(zb, kGrid)).mat;
  CHECK(operator_norm(CMat(left.adjoint() - right)) < 1e-9);
}

TEST_CASE("adjoint check holds on general seeded spaces") {
  Rng rng(84);
  const InnerFn th1 = seeded_inner(rng, 2, kGrid, false);
  const InnerFn th2 = seeded_inner(rng, 2, kGrid, true);
  const ModelSpaceBasis b1 = basis(th1), b2 = basis(th2);
  const CircleFn phi = CircleFn::from_fourier(rng.laurent(2, 3), kGrid);
  CHECK(adjoint_pair_check(b1, b2, phi) <= 1e-9);
}

TEST_CASE("symbols in the zero class build the zero operator") {
  Rng rng(85);
  const InnerFn th1 = seeded_inner(rng, 2, kGrid, true);
  const InnerFn th2 = seeded_inner(rng, 2, kGrid, false);
  const ModelSpaceBasis b1 = basis(th1), b2 = basis(th2);

  std::map<int, CMat> g1c, g2c;
  for (int k = 0; k <= 2; ++k) {
    g1c[k] = rng.gaussian_matrix(2, 2);
    g2c[k] = rng.gaussian_matrix(2, 2);
  }
  const CircleFn theta2_g = mul(th2.fn(), CircleFn::from_fourier(g2c, kGrid));
  const CircleFn theta1_g_conj =
      adjoint_fn(mul(th1.fn(), CircleFn::from_fourier(g1c, kGrid)));

  CHECK(operator_norm(build(b1, b2, theta2_g).mat) <= 1e-7);
  CHECK(operator_norm(build(b1, b2, theta1_g_conj).mat) <= 1e-7);
}

TEST_CASE("build validates shapes") {
  const ModelSpaceBasis b1 = basis(monomial(2, 1, kGrid));
  const ModelSpaceBasis b2 = basis(monomial(2, 2, kGrid));
  const CircleFn phi = CircleFn::constant(CMat::Identity(2, 2), kGrid);
  CHECK_THROWS_AS(build(b1, b2, phi), ShapeMismatch);
}

TEST_CASE("symbol digest is stable and content-sensitive") {
  Rng rng(86);
  const CircleFn f = CircleFn::from_fourier(rng.laurent(2, 2), kGrid);
  CHECK(symbol_digest(f) == symbol_digest(f));
  const CircleFn g = add(f, CircleFn::constant(CMat::Identity(2, 2), kGrid));
  CHECK(symbol_digest(f) != symbol_digest(g));
}
