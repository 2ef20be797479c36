#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "msk/matops.hpp"

namespace msk {

// Conservative spectral bookkeeping for a grid-sampled function.  Fourier
// coefficients outside [lo, hi] are asserted bounded by amp * rate^dist where
// dist is the distance to the band; `alias` bounds the L2 mass of spectrum
// the grid window cannot represent (folding).  rate == amp == alias == 0
// declares exact band-limited support, which is what polynomial constructors
// produce; everything else is a measured, deliberately pessimistic estimate.
struct Budget {
  int lo = 0;
  int hi = 0;
  double rate = 0.0;
  double amp = 0.0;
  double alias = 0.0;

  bool exact() const { return rate == 0.0 && amp == 0.0 && alias == 0.0; }
};

// Matrix-valued function on the unit circle, held as M equispaced samples
// f(z_j), z_j = exp(2*pi*i*j/M), with a lazily computed Fourier-coefficient
// cache.  Instances are immutable; copies share storage.  Coefficient
// convention:  c_k = (1/M) sum_j f(z_j) exp(-2*pi*i*j*k/M),  k in [-M/2, M/2).
class CircleFn {
 public:
  CircleFn() = default;  // empty sentinel; any real use requires a factory

  // Budget is measured from the computed spectrum (threshold 1e-15 relative).
  static CircleFn from_samples(std::vector<CMat> samples);
  // Caller vouches for the budget (e.g. when samples come from exact algebra).
  static CircleFn from_samples(std::vector<CMat> samples, const Budget& known);
  static CircleFn from_fourier(const std::map<int, CMat>& coeffs, int grid_size);
  static CircleFn constant(const CMat& value, int grid_size);
  static CircleFn zero(int rows, int cols, int grid_size);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int grid_size() const { return grid_; }
  bool empty() const { return grid_ == 0; }

  Complex grid_point(int j) const;
  const CMat& sample(int j) const;
  const std::vector<CMat>& samples() const;
  const CMat& fourier_coeff(int k) const;  // k in [-M/2, M/2)
  const Budget& budget() const { return budget_; }

  // Throws DegreeOverflow when the recorded aliasing bound exceeds alias_tol
  // relative to the function's scale.
  void require_exact(double alias_tol) const;

  // Analytic evaluation inside the disk from nonnegative coefficients.
  CMat eval_disk(Complex lambda) const;

  double sup_frobenius() const;

 private:
  struct Payload;
  CircleFn(int rows, int cols, int grid, Budget b, std::shared_ptr<const Payload> p);
  void ensure_coeffs() const;

  int rows_ = 0, cols_ = 0, grid_ = 0;
  Budget budget_;
  std::shared_ptr<const Payload> p_;

  friend CircleFn mul(const CircleFn&, const CircleFn&);
  friend CircleFn add(const CircleFn&, const CircleFn&);
  friend CircleFn sub(const CircleFn&, const CircleFn&);
  friend CircleFn scale(const CircleFn&, Complex);
  friend CircleFn adjoint_fn(const CircleFn&);
  friend CircleFn riesz_project(const CircleFn&, bool);
};

struct CircleFn::Payload {
  std::vector<CMat> samples;
  mutable std::once_flag once;
  mutable std::vector<CMat> coeffs;  // natural DFT order, filled under `once`
};

// Pointwise product f(z)g(z).  Shape (r1 x c) * (c x c2).  Throws
// DegreeOverflow when two exactly band-limited factors would wrap around the
// coefficient window; otherwise folding is charged to the result's budget.
CircleFn mul(const CircleFn& f, const CircleFn& g);

CircleFn add(const CircleFn& f, const CircleFn& g);
CircleFn sub(const CircleFn& f, const CircleFn& g);
CircleFn scale(const CircleFn& f, Complex a);

// z -> f(z)^* (pointwise conjugate transpose).
CircleFn adjoint_fn(const CircleFn& f);

// Spectral truncations: keep k >= 0, resp. k < 0.
CircleFn riesz_plus(const CircleFn& f);
CircleFn riesz_minus(const CircleFn& f);

// L2 mass of the strictly negative spectrum: distance to the analytic part.
double h2_distance(const CircleFn& f);

// (1/M) sum_j <f(z_j), g(z_j)>_Frobenius  — the grid L2(circle) pairing.
Complex inner_product(const CircleFn& f, const CircleFn& g);
double l2_norm(const CircleFn& f);

}  // namespace msk
