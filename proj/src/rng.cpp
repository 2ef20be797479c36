#include "msk/rng.hpp"

#include <cmath>
#include <numbers>

namespace msk {

int Rng::uniform_int(int lo, int hi) {
  // Modulo bias is irrelevant at the ranges used here (spans < 2^8).
  return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
}

Complex Rng::unit_complex() {
  const double t = 2.0 * std::numbers::pi * uniform();
  return {std::cos(t), std::sin(t)};
}

Complex Rng::gaussian() {
  // Box-Muller; u is kept away from zero so the log is finite.
  const double u = std::max(uniform(), 0x1.0p-60);
  const double r = std::sqrt(-2.0 * std::log(u));
  const double t = 2.0 * std::numbers::pi * uniform();
  // sqrt(1/2) per component gives unit expected |z|^2.
  return {r * std::cos(t) * std::numbers::sqrt2 / 2.0,
          r * std::sin(t) * std::numbers::sqrt2 / 2.0};
}

CMat Rng::gaussian_matrix(int rows, int cols) {
  CMat a(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a(i, j) = gaussian();
  return a;
}

CMat Rng::unitary(int d) {
  const CMat g = gaussian_matrix(d, d);
  Eigen::HouseholderQR<CMat> qr(g);
  CMat q = qr.householderQ();
  const CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix column phases so the factorization (hence Q) is unique.
  for (int j = 0; j < d; ++j) {
    const Complex rjj = r(j, j);
    const double m = std::abs(rjj);
    q.col(j) *= (m > 0.0) ? rjj / m : Complex(1.0, 0.0);
  }
  return q;
}

CMat Rng::projection(int d, int rank) {
  if (rank <= 0) return CMat::Zero(d, d);
  if (rank >= d) return CMat::Identity(d, d);
  const CMat u = unitary(d);
  const CMat cols = u.leftCols(rank);
  CMat p = cols * cols.adjoint();
  return 0.5 * (p + p.adjoint());
}

CMat Rng::contraction(int d, double norm_cap) {
  CMat sigma = CMat::Zero(d, d);
  for (int i = 0; i < d; ++i) sigma(i, i) = uniform();
  const CMat u = unitary(d);  // sequenced draws keep the stream reproducible
  const CMat v = unitary(d);
  return norm_cap * (u * sigma * v.adjoint());
}

CMat Rng::contraction_exact(int d, double norm) {
  CMat sigma = CMat::Zero(d, d);
  double top = 0.0;
  for (int i = 0; i < d; ++i) {
    const double s = uniform(0.2, 1.0);
    sigma(i, i) = s;
    top = std::max(top, s);
  }
  sigma *= norm / top;
  const CMat u = unitary(d);
  const CMat v = unitary(d);
  return u * sigma * v.adjoint();
}

std::map<int, CMat> Rng::laurent(int d, int degree, double scale) {
  std::map<int, CMat> c;
  for (int k = -degree; k <= degree; ++k) c[k] = scale * gaussian_matrix(d, d);
  return c;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  // splitmix64 finalizer over base ^ f(index): well-separated streams.
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace msk
