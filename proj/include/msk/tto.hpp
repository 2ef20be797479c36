#pragma once

#include <map>
#include <string>

#include "msk/model_space.hpp"

namespace msk {

// Matrix of the truncated Toeplitz operator f -> P_{K_{Theta2}}(Phi f) from
// K_{Theta1} to K_{Theta2}, in the given orthonormal bases.  The projection
// is the L2-orthogonal one; entries are A(i, j) = <Phi b1_j, b2_i>_{L2}.
struct TTOMatrix {
  CMat mat;                 // dim(K_{Theta2}) x dim(K_{Theta1})
  std::string theta1_spec;  // which inner function built this side (spec or digest)
  std::string theta2_spec;
  std::string symbol_id;    // digest of the symbol's coefficients
  double grid_tol = 0.0;    // worst aliasing budget charged to any column
};

TTOMatrix build(const ModelSpaceBasis& b1, const ModelSpaceBasis& b2,
                const CircleFn& phi);

// Independent block construction for monomial spaces Theta1 = z^n I (domain)
// and Theta2 = z^m I (codomain), m <= n: block (r, c) = Delta_{c - r} for
// 0 <= r < m, 0 <= c < n, where the dictionary holds Delta_s = hat{Phi}(-s),
// i.e. the symbol reads Phi = sum_s z^{-s} Delta_s.  Missing entries are
// zero; entries outside -(m-1) <= s <= n-1 never enter the matrix.
CMat block_toeplitz(int n_blk, int m_blk, const std::map<int, CMat>& delta);

// || build(b1, b2, phi).mat^* - build(b2, b1, phi^*).mat ||  — the adjoint of
// a truncated Toeplitz operator is the one with the adjoint symbol.
double adjoint_pair_check(const ModelSpaceBasis& b1, const ModelSpaceBasis& b2,
                          const CircleFn& phi);

// Stable hex digest of a function's significant Fourier coefficients.
std::string symbol_digest(const CircleFn& phi);

}  // namespace msk
