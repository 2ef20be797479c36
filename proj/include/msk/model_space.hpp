#pragma once

#include <vector>

#include "msk/inner.hpp"

namespace msk {

// Orthonormal basis of the model space K_Theta = H^2 (-) Theta H^2 (vector
// valued), held as d x 1 grid functions.  dim equals the degree of Theta.
class ModelSpaceBasis {
 public:
  ModelSpaceBasis() = default;

  const InnerFn& theta() const { return theta_; }
  int dim() const { return static_cast<int>(elems_.size()); }
  int matrix_dim() const { return theta_.dim(); }
  int grid_size() const { return theta_.grid_size(); }
  const CircleFn& element(int i) const;

  double gram_defect() const { return gram_defect_; }
  double membership_defect() const { return member_defect_; }

  // Coefficients <f, b_i> of a d x 1 function against the basis.
  CVec coords(const CircleFn& f) const;
  // sum_i coeffs(i) * b_i.
  CircleFn synthesize(const CVec& coeffs) const;

  friend ModelSpaceBasis basis(const InnerFn& theta, int seeds);

 private:
  InnerFn theta_;
  std::vector<CircleFn> elems_;
  double gram_defect_ = 0.0;
  double member_defect_ = 0.0;
};

// L2-orthogonal projection of an analytic function onto K_Theta:
//   P f = f - Theta P_+(Theta^* f).
// Inputs must be analytic within tol::analytic (relative), else NotAnalytic.
CircleFn project(const InnerFn& theta, const CircleFn& f);

// Reproducing kernel direction:
//   (k_lambda x)(z) = (1 - conj(lambda) z)^{-1} (I - Theta(z) Theta(lambda)^*) x,
// for |lambda| <= 0.9 (PointTooClose beyond).
CircleFn kernel(const InnerFn& theta, Complex lambda, const CVec& x);

// Orthonormal basis construction.  Monomial-type inner functions get the
// exact polynomial basis z^j e_p; otherwise the span of reproducing kernels
// at `seeds` interior points (0 = automatic count) is orthonormalized.
// Throws DeficientSpan when the kernel span cannot resolve the space and
// InfiniteDimensional when no finite degree is detected.
ModelSpaceBasis basis(const InnerFn& theta, int seeds = 0);

// max over an orthonormal basis b of K_{Theta1} of the L2 distance
// ||b - Theta2 P_+(Theta2^* b)|| from b to Theta2 H^2; zero exactly when
// K_{Theta1} is contained in Theta2 H^2 (impossible for nonconstant Theta1
// when Theta2 has a zero in the disk).
double inclusion_defect(const InnerFn& theta1, const InnerFn& theta2);

}  // namespace msk
