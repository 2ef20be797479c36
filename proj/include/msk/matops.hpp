#pragma once

#include <Eigen/Dense>
#include <complex>

#include "msk/errors.hpp"
#include "msk/tol.hpp"

namespace msk {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// Largest singular value.
double operator_norm(const CMat& a);

// Frobenius norm (convenience wrapper, keeps call sites uniform).
double frob_norm(const CMat& a);

// Principal square root of a Hermitian PSD matrix.  Eigenvalues in
// [-psd_slack, 0) are clamped to zero; anything lower throws NotPSD.
// Off-Hermitian input beyond psd_slack throws NotHermitian.
CMat hermitian_sqrt(const CMat& a, double psd_slack = tol::psd);

enum class DefectSide { left, right };
// Defect operator of a strict contraction W:
//   right: (I - W^*W)^{1/2}   (acts on the domain side)
//   left:  (I - WW^*)^{1/2}   (acts on the codomain side)
// Throws NotStrictContraction unless ||W|| < 1 - margin.
CMat defect(const CMat& w, DefectSide side, double margin = tol::eps_strict);

// Numerical rank: number of singular values above rel_tol * sigma_max.
int rank(const CMat& a, double rel_tol);

// Solve A X = B for square A via partial-pivot LU.  Throws Singular when the
// pivot ratio indicates the system is numerically rank-deficient.
CMat solve(const CMat& a, const CMat& b);
CMat inverse(const CMat& a);

// True when p is Hermitian and idempotent within slack.
bool is_projection(const CMat& p, double slack = tol::psd);

}  // namespace msk
