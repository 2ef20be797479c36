#include <catch2/catch_amalgamated.hpp>
#include <map>

#include "msk/circle_fun.hpp"
#include "msk/rng.hpp"

using namespace msk;

namespace {
constexpr int kGrid = 256;

CircleFn monomial_fn(int k, const CMat& coeff, int grid = kGrid) {
  std::map<int, CMat> c;
  c[k] = coeff;
  return CircleFn::from_fourier(c, grid);
}
}  // namespace

TEST_CASE("from_fourier round trip") {
  const CMat id = CMat::Identity(1, 1);
  const CircleFn one = monomial_fn(0, id);
  for (int j = 0; j < 8; ++j)
    CHECK(std::abs(one.sample(j)(0, 0) - Complex(1.0, 0.0)) < 1e-14);

  const CircleFn z = monomial_fn(1, id);
  for (int j = 0; j < kGrid; ++j)
    CHECK(std::abs(z.sample(j)(0, 0) - z.grid_point(j)) < 1e-13);

  Rng rng(20);
  std::map<int, CMat> coeffs;
  coeffs[-2] = rng.gaussian_matrix(2, 2);
  coeffs[3] = rng.gaussian_matrix(2, 2);
  const CircleFn f = CircleFn::from_fourier(coeffs, kGrid);
  CHECK(frob_norm(CMat(f.fourier_coeff(-2) - coeffs[-2])) < 1e-12);
  CHECK(frob_norm(CMat(f.fourier_coeff(3) - coeffs[3])) < 1e-12);
  CHECK(frob_norm(f.fourier_coeff(5)) < 1e-12);
  CHECK(f.budget().exact());
}

TEST_CASE("from_fourier validates the band") {
  std::map<int, CMat> c;
  c[kGrid / 2] = CMat::Identity(1, 1);
  CHECK_THROWS_AS(CircleFn::from_fourier(c, kGrid), BadIndex);
}

TEST_CASE("inner_product matches monomial orthonormality") {
  Rng rng(30);
  const CMat x = rng.gaussian_matrix(2, 1);
  const CMat y = rng.gaussian_matrix(2, 1);
  const Complex xy = (y.adjoint() * x)(0, 0);  // <x, y> in C^2

  for (int j = 0; j <= 2; ++j)
    for (int k = 0; k <= 2; ++k) {
      const Complex p =
          inner_product(monomial_fn(j, x), monomial_fn(k, y));
      if (j == k)
        CHECK(std::abs(p - xy) < 1e-13);
      else
        CHECK(std::abs(p) < 1e-13);
    }

  // ||x + z y||^2 = ||x||^2 + ||y||^2.
  const CircleFn f = add(monomial_fn(0, x), monomial_fn(1, y));
  CHECK(std::abs(inner_product(f, f) -
                 Complex(x.squaredNorm() + y.squaredNorm(), 0.0)) < 1e-13);
}

TEST_CASE("inner_product equals the coefficient-space sum") {
  Rng rng(31);
  const std::map<int, CMat> fc = rng.laurent(1, 3);
  const std::map<int, CMat> gc = rng.laurent(1, 3);
  const CircleFn f = CircleFn::from_fourier(fc, kGrid);
  const CircleFn g = CircleFn::from_fourier(gc, kGrid);
  Complex parseval(0.0, 0.0);
  for (const auto& [k, m] : fc) {
    const auto it = gc.find(k);
    if (it != gc.end()) parseval += (it->second.adjoint() * m).trace();
  }
  CHECK(std::abs(inner_product(f, g) - parseval) < 1e-12);
}

TEST_CASE("mul and adjoint_fn basics") {
  Rng rng(40);
  const std::map<int, CMat> fc = rng.laurent(2, 3);
  const CircleFn f = CircleFn::from_fourier(fc, kGrid);
  const CircleFn id = CircleFn::constant(CMat::Identity(2, 2), kGrid);
  CHECK(sub(mul(f, id), f).sup_frobenius() < 1e-13);

  const CMat a = rng.gaussian_matrix(2, 2);
  const CircleFn za = monomial_fn(1, a);
  const CircleFn adj = adjoint_fn(za);
  CHECK(frob_norm(CMat(adj.fourier_coeff(-1) - a.adjoint())) < 1e-13);
  CHECK(frob_norm(adj.fourier_coeff(1)) < 1e-13);
}

TEST_CASE("product coefficients are coefficient convolutions") {
  Rng rng(41);
  const std::map<int, CMat> fc = rng.laurent(2, 3);
  const std::map<int, CMat> gc = rng.laurent(2, 3);
  const CircleFn prod = mul(CircleFn::from_fourier(fc, kGrid),
                            CircleFn::from_fourier(gc, kGrid));
  for (int k = -6; k <= 6; ++k) {
    CMat expect = CMat::Zero(2, 2);
    for (const auto& [j, m] : fc) {
      const auto it = gc.find(k - j);
      if (it != gc.end()) expect += m * it->second;
    }
    CHECK(frob_norm(CMat(prod.fourier_coeff(k) - expect)) < 1e-12);
  }
}

TEST_CASE("mul rejects wraparound of exact polynomials") {
  const CMat id = CMat::Identity(1, 1);
  const CircleFn high = monomial_fn(kGrid / 2 - 1, id);
  CHECK_THROWS_AS(mul(high, high), DegreeOverflow);
}

TEST_CASE("riesz split") {
  Rng rng(50);
  const CMat a = rng.gaussian_matrix(1, 1);
  const CMat b = rng.gaussian_matrix(1, 1);
  const CMat c = rng.gaussian_matrix(1, 1);
  std::map<int, CMat> m{{-1, a}, {0, b}, {1, c}};
  const CircleFn f = CircleFn::from_fourier(m, kGrid);
  const CircleFn plus = riesz_plus(f);

  CHECK(frob_norm(plus.fourier_coeff(-1)) < 1e-13);
  CHECK(frob_norm(CMat(plus.fourier_coeff(0) - b)) < 1e-13);
  CHECK(frob_norm(CMat(plus.fourier_coeff(1) - c)) < 1e-13);

  // Analytic input is a fixed point.
  std::map<int, CMat> an{{0, b}, {2, c}};
  const CircleFn g = CircleFn::from_fourier(an, kGrid);
  CHECK(sub(riesz_plus(g), g).sup_frobenius() < 1e-13);

  // The two halves partition any Laurent polynomial.
  const CircleFn h = CircleFn::from_fourier(rng.laurent(2, 4), kGrid);
  CHECK(sub(add(riesz_plus(h), riesz_minus(h)), h).sup_frobenius() < 1e-12);

  // Idempotent and self-adjoint for the L2 pairing.
  const CircleFn u = CircleFn::from_fourier(rng.laurent(1, 4), kGrid);
  const CircleFn v = CircleFn::from_fourier(rng.laurent(1, 4), kGrid);
  CHECK(sub(riesz_plus(riesz_plus(u)), riesz_plus(u)).sup_frobenius() < 1e-12);
  CHECK(std::abs(inner_product(riesz_plus(u), v) -
                 inner_product(u, riesz_plus(v))) < 1e-10);
}

TEST_CASE("h2_distance") {
  Rng rng(60);
  const CMat b = rng.gaussian_matrix(1, 1);
  std::map<int, CMat> an{{0, b}, {3, b}};
  CHECK(h2_distance(CircleFn::from_fourier(an, kGrid)) < 1e-12);

  CHECK(h2_distance(monomial_fn(-1, CMat::Identity(1, 1))) ==
        Catch::Approx(1.0).epsilon(1e-12));

  const std::map<int, CMat> mc = rng.laurent(2, 3);
  const CircleFn mixed = CircleFn::from_fourier(mc, kGrid);
  double mass = 0.0;
  for (const auto& [k, m] : mc)
    if (k < 0) mass += m.squaredNorm();
  CHECK(h2_distance(mixed) == Catch::Approx(std::sqrt(mass)).epsilon(1e-12));
}

TEST_CASE("mul is associative within budget") {
  Rng rng(70);
  const CircleFn f = CircleFn::from_fourier(rng.laurent(2, 2), kGrid);
  const CircleFn g = CircleFn::from_fourier(rng.laurent(2, 2), kGrid);
  const CircleFn h = CircleFn::from_fourier(rng.laurent(2, 2), kGrid);
  CHECK(sub(mul(mul(f, g), h), mul(f, mul(g, h))).sup_frobenius() < 1e-10);
}

TEST_CASE("grid size must be a power of two") {
  std::map<int, CMat> c{{0, CMat::Identity(1, 1)}};
  CHECK_THROWS_AS(CircleFn::from_fourier(c, 100), BadShape);
}
