#pragma once

#include <utility>

#include "msk/tto.hpp"

namespace msk {

// Least-squares decomposition of a symbol against the zero pattern
//   Phi ~ (Theta1 Phi1)^* + Theta2 Phi2,   Phi1, Phi2 analytic.
// The splitting constant (the k = 0 slot is shared by both halves) is
// optimized over all d x d complex matrices.
struct SymbolDecomposition {
  CircleFn phi1;    // analytic witness, Theta1 side
  CircleFn phi2;    // analytic witness, Theta2 side
  CMat c_split;     // constant assigned to the conjugated side
  double residual;  // L2 distance from Phi to the reconstruction
};

SymbolDecomposition zero_residual(const CircleFn& phi, const InnerFn& theta1,
                                  const InnerFn& theta2);

// Cross-check of the two zero tests: operator norm of the built matrix
// against the least-squares residual.  Both verdicts are relative to the
// symbol's L2 norm.
struct ZeroReport {
  double op_norm;
  double sym_residual;
  double scale;
  bool op_zero;
  bool sym_zero;
  bool consistent;
  double tol_op;
  double tol_sym;
};

ZeroReport zero_equivalence_check(const CircleFn& phi,
                                  const ModelSpaceBasis& b1,
                                  const ModelSpaceBasis& b2);

// Canonical representing pair: Psi1 + Psi2^* defines the same operator as
// Phi, with the columns of Psi1 in K_{Theta2} and those of Psi2 in K_{Theta1}.
std::pair<CircleFn, CircleFn> symbol_pair(const CircleFn& phi,
                                          const InnerFn& theta1,
                                          const InnerFn& theta2);

// Move a representing pair along the kernel of the symbol map by a constant
// d x d matrix X:
//   Psi1' = Psi1 + k0^{Theta2} X,    Psi2' = Psi2 - k0^{Theta1} X^*,
// where k0^{Theta}(z) = I - Theta(z) Theta(0)^*.  The defining operator is
// unchanged: the added pieces contribute X f - X f after projection.
std::pair<CircleFn, CircleFn> class_shift(const CircleFn& psi1,
                                          const CircleFn& psi2, const CMat& x,
                                          const InnerFn& theta1,
                                          const InnerFn& theta2);

// Dimension of the space of operators {A_Phi} between two model spaces,
// computed as the rank of the coefficient -> operator map over a symbol
// window wide enough to saturate.  closed_form carries the reference count
// m^d + n^d - d^2 for comparison; the two are reported side by side and
// disagree for d > 1.
struct DimReport {
  int computed = 0;
  long long closed_form = 0;
  int m = 0;  // dim K_{Theta1}
  int n = 0;  // dim K_{Theta2}
  int d = 0;
  bool saturated = false;  // rank stable when the window grows by one
};

DimReport tto_space_dim(const InnerFn& theta1, const InnerFn& theta2);

}  // namespace msk
