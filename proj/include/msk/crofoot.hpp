#pragma once

#include "msk/model_space.hpp"

namespace msk {

// The unitary J_W : K_Theta -> K_Theta' realized against orthonormal bases,
// bundled with everything needed to apply it pointwise.  Theta' is the
// Crofoot transform of Theta by W (the range basis certifies that).
struct CrofootPair {
  CMat w;
  ModelSpaceBasis domain;  // basis of K_Theta
  ModelSpaceBasis range;   // basis of K_Theta'
  CMat j;                  // matrix of J_W (range dim x domain dim)
  double unitarity_defect = 0.0;  // max(||J*J - I||, ||JJ* - I||)
};

// (J_W f)(z) = D_{W*} (I - Theta(z) W*)^{-1} f(z), compressed to the bases.
// Throws NotUnitary when the computed matrix is far from unitary, which
// signals an inconsistent range space or a too-coarse grid.
CrofootPair transform(const ModelSpaceBasis& domain,
                      const ModelSpaceBasis& range, const CMat& w);

// Pointwise J_W and its inverse J_W^* on arbitrary grid functions:
//   (J_W^* g)(z) = D_{W*} (I + Theta'(z) W*)^{-1} g(z).
CircleFn apply(const CrofootPair& pair, const CircleFn& f);
CircleFn adjoint_apply(const CrofootPair& pair, const CircleFn& g);

// L2 error in the reproducing-kernel action
//   J_W (k^Theta_lambda (I - W Theta(lambda)^*)^{-1} D_{W*} y) = k^{Theta'}_lambda y.
double kernel_action_defect(const CrofootPair& pair, Complex lambda,
                            const CVec& y);

// Symbol transport matching the conjugation J_{W2} A_Phi J_{W1}^*:
//   push: Psi(z) = D_{W2*}^{-1}(I - W2 Theta2(z)*) Phi(z) (I - Theta1(z) W1*) D_{W1*}^{-1}
//   pull: Phi(z) = (I - W2 Theta2(z)*)^{-1} D_{W2*} Psi(z) D_{W1*} (I - Theta1(z) W1*)^{-1}
// so that J_{W2} A_Phi J_{W1}^* = A_{push(Phi)} on the transformed pair and
// J_{W2}^* A_Psi J_{W1} = A_{pull(Psi)} on the original pair.  Both factors are
// the pointwise inverse adjoints of the J multipliers; the two maps are exact
// pointwise inverses of each other.  Requires strict contractions W1, W2.
CircleFn symbol_push(const CircleFn& phi, const CMat& w1, const CMat& w2,
                     const InnerFn& theta1, const InnerFn& theta2);
CircleFn symbol_pull(const CircleFn& psi, const CMat& w1, const CMat& w2,
                     const InnerFn& theta1, const InnerFn& theta2);

}  // namespace msk
