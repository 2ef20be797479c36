#include <catch2/catch_amalgamated.hpp>
#include <map>

#include "msk/inner.hpp"
#include "msk/instances.hpp"
#include "msk/rng.hpp"

using namespace msk;

namespace {
constexpr int kGrid = 512;
}

TEST_CASE("monomial inner functions") {
  const InnerFn z = monomial(1, 1, kGrid);
  CHECK(z.dim() == 1);
  CHECK(z.unitarity_defect() < 1e-12);
  CHECK(z.purity() < 1e-12);
  CHECK(z.degree_hint().value() == 1);

  const InnerFn z3 = monomial(3, 2, kGrid);
  CHECK(frob_norm(CMat(z3.fn().fourier_coeff(3) - CMat::Identity(2, 2))) <
        1e-13);
  for (int k = 0; k < 3; ++k) CHECK(frob_norm(z3.fn().fourier_coeff(k)) < 1e-13);
  CHECK(z3.degree_hint().value() == 6);
  CHECK(frob_norm(z3.at_zero()) < 1e-13);
}

TEST_CASE("blaschke_potapov products") {
  const CMat eye = CMat::Identity(1, 1);

  // A single zero-at-origin full-rank factor is the monomial z.
  const InnerFn z = blaschke_potapov({{Complex(0, 0), eye}}, 1, kGrid);
  CHECK(sub(z.fn(), monomial(1, 1, kGrid).fn()).sup_frobenius() < 1e-12);

  // A scalar factor vanishes at its zero.
  const InnerFn b = blaschke_potapov({{Complex(0.5, 0.0), eye}}, 1, kGrid);
  CHECK(std::abs(b.eval(Complex(0.5, 0.0))(0, 0)) < 1e-10);
  CHECK(b.unitarity_defect() < 1e-10);

  // Seeded two-factor matrix product: unitary on the grid, expected degree.
  Rng rng(8);
  const std::vector<BlaschkeFactor> factors{
      {Complex(0.3, 0.2), CMat::Identity(2, 2)},
      {Complex(-0.1, 0.4), rng.projection(2, 1)}};
  const InnerFn th = blaschke_potapov(factors, 2, kGrid);
  CHECK(th.unitarity_defect() <= 1e-10);
  CHECK(th.degree_hint().value() == 3);
  for (int j = 0; j < kGrid; j += 37) {
    const CMat s = th.fn().sample(j);
    CHECK(operator_norm(CMat(s.adjoint() * s - CMat::Identity(2, 2))) < 1e-10);
  }
}

TEST_CASE("blaschke_potapov rejects bad factors") {
  const CMat eye = CMat::Identity(1, 1);
  CHECK_THROWS_AS(blaschke_potapov({{Complex(0.95, 0.0), eye}}, 1, kGrid),
                  ZeroTooLarge);
  CMat half = 0.5 * CMat::Identity(2, 2);
  CHECK_THROWS_AS(blaschke_potapov({{Complex(0.2, 0.0), half}}, 2, kGrid),
                  NotProjection);
}

TEST_CASE("certify accepts inner and rejects non-inner") {
  const InnerFn z2 = certify(monomial(2, 1, kGrid).fn());
  CHECK(z2.unitarity_defect() < 1e-12);

  std::map<int, CMat> c{{1, CMat(0.5 * CMat::Identity(1, 1))}};
  CHECK_THROWS_AS(certify(CircleFn::from_fourier(c, kGrid)), NotInner);

  // Constant unitary: accepted but flagged as constant.
  const InnerFn u = certify(CircleFn::constant(CMat::Identity(2, 2), kGrid));
  CHECK(u.constant());
}

TEST_CASE("crofoot transform of an inner function") {
  const InnerFn th = monomial(2, 1, kGrid);

  // W = 0 leaves the function untouched.
  const InnerFn same = crofoot_inner(th, CMat::Zero(1, 1));
  CHECK(sub(same.fn(), th.fn()).sup_frobenius() < 1e-13);

  // Theta(0) = 0 forces Theta'(0) = -W.
  CMat w(1, 1);
  w(0, 0) = Complex(0.3, -0.4);
  const InnerFn tp = crofoot_inner(th, w);
  CHECK(frob_norm(CMat(tp.at_zero() + w)) < 1e-10);
  CHECK(tp.unitarity_defect() < 1e-8);

  // Scalar case is the classical Moebius transform (theta - w)/(1 - conj(w) theta).
  for (int j = 0; j < kGrid; j += 29) {
    const Complex t = th.fn().sample(j)(0, 0);
    const Complex expect = (t - w(0, 0)) / (1.0 - std::conj(w(0, 0)) * t);
    CHECK(std::abs(tp.fn().sample(j)(0, 0) - expect) < 1e-12);
  }
}

TEST_CASE("crofoot transform centered at the origin value") {
  // W = Theta(0) recenters: the transform vanishes at 0.
  Rng rng(12);
  const InnerFn th = seeded_inner(rng, 2, kGrid, false);
  const CMat w = th.at_zero();
  const InnerFn tp = crofoot_inner(th, w);
  CHECK(operator_norm(tp.at_zero()) <= 1e-10);
}

TEST_CASE("crofoot transform inverts with negated parameter") {
  Rng rng(13);
  const InnerFn th = seeded_inner(rng, 2, kGrid, false);
  const CMat w = rng.contraction(2, 0.6);
  const InnerFn tp = crofoot_inner(th, w);
  const InnerFn back = crofoot_inner(tp, CMat(-w));
  CHECK(sub(back.fn(), th.fn()).sup_frobenius() < 1e-8);
}

TEST_CASE("defect resolvent identity for transformed inner functions") {
  Rng rng(14);
  const InnerFn th = seeded_inner(rng, 2, kGrid, true);
  const CMat w = rng.contraction(2, 0.7);
  const InnerFn tp = crofoot_inner(th, w);
  const CMat dws = defect(w, DefectSide::left);
  const CMat eye = CMat::Identity(2, 2);
  double worst = 0.0;
  for (int j = 0; j < kGrid; ++j) {
    const CMat lhs = eye + tp.fn().sample(j) * w.adjoint();
    const CMat rhs =
        dws * inverse(CMat(eye - th.fn().sample(j) * w.adjoint())) * dws;
    worst = std::max(worst, operator_norm(CMat(lhs - rhs)));
  }
  CHECK(worst <= 1e-9);
}
