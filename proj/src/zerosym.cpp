#include "msk/zerosym.hpp"

#include <algorithm>
#include <cmath>

namespace msk {

namespace {

constexpr double kTolOp = 1e-7;   // ||A_Phi|| <= kTolOp * scale  counts as zero
constexpr double kTolSym = 1e-6;  // residual <= kTolSym * scale  counts as zero

// Orthogonal projection of an arbitrary grid function onto Theta H^2.
CircleFn project_theta_h2(const InnerFn& theta, const CircleFn& g) {
  return mul(theta.fn(), riesz_plus(mul(adjoint_fn(theta.fn()), g)));
}

// Strictly positive spectral part.
CircleFn strict_plus(const CircleFn& f) {
  const CircleFn plus = riesz_plus(f);
  return sub(plus, CircleFn::constant(f.fourier_coeff(0), f.grid_size()));
}

// k0 as a matrix function: z -> I - Theta(z) Theta(0)^*.  Every column lies
// in the model space of Theta.
CircleFn kernel_at_zero(const InnerFn& theta) {
  const int d = theta.dim();
  const int m = theta.grid_size();
  const CMat t0_adj = theta.at_zero().adjoint();
  std::vector<CMat> samples(m);
  for (int j = 0; j < m; ++j)
    samples[j] = CMat::Identity(d, d) - theta.fn().sample(j) * t0_adj;
  return CircleFn::from_samples(std::move(samples));
}

}  // namespace

SymbolDecomposition zero_residual(const CircleFn& phi, const InnerFn& theta1,
                                  const InnerFn& theta2) {
  const int d = phi.rows();
  if (phi.cols() != d || theta1.dim() != d || theta2.dim() != d)
    throw DimMismatch("zero_residual: dimension mismatch");
  const int m = phi.grid_size();
  if (theta1.grid_size() != m || theta2.grid_size() != m)
    throw ShapeMismatch("zero_residual: grid size mismatch");

  const CircleFn phi_minus = riesz_minus(phi);
  const CircleFn phi_plus0 = riesz_plus(phi);  // constant included

  // The split constant c minimizes the sum of the two projection defects
  //   F(c) = ||(I - P_{Theta2 H^2})(phi_+0 - c)||^2
  //        + ||(I - P_{Theta1 H^2})((phi_- + c)^*)||^2.
  // Writing the second deviation through its adjoint makes both terms linear
  // in c, so the optimum solves a d^2 x d^2 least-squares system over the
  // matrix-unit directions.
  const CircleFn x20 = sub(phi_plus0, project_theta_h2(theta2, phi_plus0));
  const CircleFn pm_star = adjoint_fn(phi_minus);
  const CircleFn y0 = adjoint_fn(sub(pm_star, project_theta_h2(theta1, pm_star)));

  const int nvar = d * d;
  std::vector<CircleFn> dirs2;  // d/d(gamma) of (I - P2)(phi_+0 - c)
  std::vector<CircleFn> dirs1;  // d/d(gamma) of [(I - P1)((phi_- + c)^*)]^*
  dirs2.reserve(nvar);
  dirs1.reserve(nvar);
  for (int p = 0; p < d; ++p)
    for (int q = 0; q < d; ++q) {
      CMat e = CMat::Zero(d, d);
      e(p, q) = 1.0;
      const CircleFn ec = CircleFn::constant(e, m);
      const CircleFn ec_star = CircleFn::constant(CMat(e.adjoint()), m);
      dirs2.push_back(sub(ec, project_theta_h2(theta2, ec)));
      dirs1.push_back(
          adjoint_fn(sub(ec_star, project_theta_h2(theta1, ec_star))));
    }

  CMat h(nvar, nvar);
  CVec beta(nvar);
  for (int a = 0; a < nvar; ++a) {
    beta(a) = inner_product(x20, dirs2[a]) - inner_product(y0, dirs1[a]);
    for (int b = 0; b <= a; ++b) {
      h(a, b) = inner_product(dirs2[b], dirs2[a]) +
                inner_product(dirs1[b], dirs1[a]);
      h(b, a) = std::conj(h(a, b));
    }
  }

  // Pseudo-inverse solve; H is Hermitian PSD and may be rank deficient when
  // some constant directions lie inside Theta H^2.
  Eigen::SelfAdjointEigenSolver<CMat> es(h);
  const Eigen::VectorXd ev = es.eigenvalues();
  const double top = std::max(ev(ev.size() - 1), 0.0);
  CVec gamma = CVec::Zero(nvar);
  if (top > 0.0) {
    const CVec rhs = es.eigenvectors().adjoint() * beta;
    CVec scaled = CVec::Zero(nvar);
    for (int i = 0; i < nvar; ++i)
      if (ev(i) > 1e-12 * top) scaled(i) = rhs(i) / ev(i);
    gamma = es.eigenvectors() * scaled;
  }

  CMat c = CMat::Zero(d, d);
  int a = 0;
  for (int p = 0; p < d; ++p)
    for (int q = 0; q < d; ++q) c(p, q) = gamma(a++);

  const CircleFn cfn = CircleFn::constant(c, m);
  const CircleFn target1 = adjoint_fn(add(phi_minus, cfn));
  const CircleFn target2 = sub(phi_plus0, cfn);
  const CircleFn g1 = riesz_plus(mul(adjoint_fn(theta1.fn()), target1));
  const CircleFn g2 = riesz_plus(mul(adjoint_fn(theta2.fn()), target2));
  const CircleFn recon =
      add(adjoint_fn(mul(theta1.fn(), g1)), mul(theta2.fn(), g2));

  SymbolDecomposition out;
  out.phi1 = g1;
  out.phi2 = g2;
  out.c_split = std::move(c);
  out.residual = l2_norm(sub(phi, recon));
  return out;
}

ZeroReport zero_equivalence_check(const CircleFn& phi,
                                  const ModelSpaceBasis& b1,
                                  const ModelSpaceBasis& b2) {
  ZeroReport rep;
  rep.scale = std::max(l2_norm(phi), 1e-300);
  rep.op_norm = operator_norm(build(b1, b2, phi).mat);
  rep.sym_residual = zero_residual(phi, b1.theta(), b2.theta()).residual;
  rep.tol_op = kTolOp;
  rep.tol_sym = kTolSym;
  rep.op_zero = rep.op_norm <= kTolOp * rep.scale;
  rep.sym_zero = rep.sym_residual <= kTolSym * rep.scale;
  rep.consistent = rep.op_zero == rep.sym_zero;
  return rep;
}

std::pair<CircleFn, CircleFn> symbol_pair(const CircleFn& phi,
                                          const InnerFn& theta1,
                                          const InnerFn& theta2) {
  const int d = phi.rows();
  if (phi.cols() != d || theta1.dim() != d || theta2.dim() != d)
    throw DimMismatch("symbol_pair: dimension mismatch");

  // Psi1 carries the analytic part of Phi reduced mod Theta2 H^2; Psi2 the
  // conjugate-analytic part reduced mod Theta1 H^2.  Dropped pieces multiply
  // into Theta2 H^2 (resp. produce strictly anti-analytic products against
  // model-space arguments), so they never reach the compressed operator.
  const CircleFn plus = riesz_plus(phi);
  const CircleFn psi1 = sub(plus, project_theta_h2(theta2, plus));
  const CircleFn anti = strict_plus(adjoint_fn(phi));
  const CircleFn psi2 = sub(anti, project_theta_h2(theta1, anti));
  return {psi1, psi2};
}

std::pair<CircleFn, CircleFn> class_shift(const CircleFn& psi1,
                                          const CircleFn& psi2, const CMat& x,
                                          const InnerFn& theta1,
                                          const InnerFn& theta2) {
  const int d = psi1.rows();
  if (psi1.cols() != d || psi2.rows() != d || psi2.cols() != d ||
      x.rows() != d || x.cols() != d || theta1.dim() != d || theta2.dim() != d)
    throw DimMismatch("class_shift: dimension mismatch");
  const int m = psi1.grid_size();
  const CircleFn xc = CircleFn::constant(x, m);
  const CircleFn xc_adj = CircleFn::constant(CMat(x.adjoint()), m);
  const CircleFn shifted1 = add(psi1, mul(kernel_at_zero(theta2), xc));
  const CircleFn shifted2 = sub(psi2, mul(kernel_at_zero(theta1), xc_adj));
  return {shifted1, shifted2};
}

DimReport tto_space_dim(const InnerFn& theta1, const InnerFn& theta2) {
  if (theta1.dim() != theta2.dim())
    throw DimMismatch("tto_space_dim: dimension mismatch");
  const int d = theta1.dim();
  const ModelSpaceBasis b1 = basis(theta1);
  const ModelSpaceBasis b2 = basis(theta2);
  const int m = b1.dim();
  const int n = b2.dim();
  const int grid = theta1.grid_size();

  // Symbol window: wide enough that every further monomial acts as zero.
  int hi1 = 0, hi2 = 0;
  for (int i = 0; i < m; ++i) hi1 = std::max(hi1, b1.element(i).budget().hi);
  for (int i = 0; i < n; ++i) hi2 = std::max(hi2, b2.element(i).budget().hi);
  const int lo_cut = hi1 + 2;
  const int hi_cut = hi2 + 2;
  if (lo_cut + hi_cut + 3 >= grid / 2)
    throw DegreeOverflow("tto_space_dim: symbol window exceeds the grid");

  // One extra degree on each side fuels the saturation check.
  const int cols_inner = (lo_cut + hi_cut + 1) * d * d;
  const int cols_all = (lo_cut + hi_cut + 3) * d * d;
  CMat stacked(m * n, cols_all);
  int col = 0, col_inner = 0;
  CMat inner_block(m * n, cols_inner);
  for (int k = -lo_cut - 1; k <= hi_cut + 1; ++k)
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < d; ++q) {
        CMat e = CMat::Zero(d, d);
        e(p, q) = 1.0;
        std::map<int, CMat> c;
        c[k] = e;
        const TTOMatrix t =
            build(b1, b2, CircleFn::from_fourier(c, grid));
        const CMat& a = t.mat;
        CVec v(m * n);
        int idx = 0;
        for (int jj = 0; jj < a.cols(); ++jj)
          for (int ii = 0; ii < a.rows(); ++ii) v(idx++) = a(ii, jj);
        stacked.col(col++) = v;
        if (k >= -lo_cut && k <= hi_cut) inner_block.col(col_inner++) = v;
      }

  DimReport rep;
  rep.d = d;
  rep.m = m;
  rep.n = n;
  rep.computed = rank(inner_block, tol::dim_rank);
  rep.saturated = rank(stacked, tol::dim_rank) == rep.computed;
  long long md = 1, nd = 1;
  for (int i = 0; i < d; ++i) {
    md *= m;
    nd *= n;
  }
  rep.closed_form = md + nd - static_cast<long long>(d) * d;
  return rep;
}

}  // namespace msk
