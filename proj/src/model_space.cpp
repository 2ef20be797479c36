#include "msk/model_space.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace msk {

namespace {

// Interior sample points for kernel spans: a sunflower spiral staying inside
// |lambda| <= 0.6 so kernels remain well conditioned.
std::vector<Complex> spiral_points(int count) {
  constexpr double golden = 0.6180339887498949;
  std::vector<Complex> pts(count);
  for (int l = 0; l < count; ++l) {
    const double r = 0.6 * std::sqrt((l + 0.5) / count);
    const double t = 2.0 * std::numbers::pi * golden * l;
    pts[l] = Complex(r * std::cos(t), r * std::sin(t));
  }
  return pts;
}

// Exact polynomial fast path applies when Theta == z^n I on the nose.
int monomial_power(const InnerFn& theta) {
  const Budget& b = theta.fn().budget();
  if (!b.exact() || b.lo != b.hi || b.lo < 1) return 0;
  const int d = theta.dim();
  const CMat& c = theta.fn().fourier_coeff(b.lo);
  if ((c - CMat::Identity(d, d)).norm() > 1e-14) return 0;
  return b.lo;
}

std::vector<CircleFn> combine(const std::vector<CircleFn>& funcs,
                              const CMat& weights) {
  // columns of `weights` give the output functions as combinations of funcs.
  const int m = funcs[0].grid_size();
  const int d = funcs[0].rows();
  std::vector<CircleFn> out;
  out.reserve(weights.cols());
  for (int c = 0; c < weights.cols(); ++c) {
    std::vector<CMat> samples(m, CMat::Zero(d, 1));
    for (int a = 0; a < weights.rows(); ++a) {
      const Complex wa = weights(a, c);
      if (wa == Complex(0.0, 0.0)) continue;
      for (int j = 0; j < m; ++j) samples[j] += wa * funcs[a].sample(j);
    }
    out.push_back(CircleFn::from_samples(std::move(samples)));
  }
  return out;
}

CMat gram(const std::vector<CircleFn>& funcs) {
  // Entry (i, j) = <f_j, f_i>: with this orientation the gram of the
  // combined functions is W^dagger G W, so eigenvector columns of G feed
  // combine() directly; the transposed orientation would need conjugates.
  const int k = static_cast<int>(funcs.size());
  CMat g(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j <= i; ++j) {
      g(i, j) = inner_product(funcs[j], funcs[i]);
      g(j, i) = std::conj(g(i, j));
    }
  return g;
}

}  // namespace

const CircleFn& ModelSpaceBasis::element(int i) const {
  if (i < 0 || i >= dim()) throw BadIndex("element: index out of range");
  return elems_[i];
}

CVec ModelSpaceBasis::coords(const CircleFn& f) const {
  if (f.rows() != matrix_dim() || f.cols() != 1)
    throw ShapeMismatch("coords: expected a d x 1 function");
  CVec c(dim());
  for (int i = 0; i < dim(); ++i) c(i) = inner_product(f, elems_[i]);
  return c;
}

CircleFn ModelSpaceBasis::synthesize(const CVec& coeffs) const {
  if (coeffs.size() != dim()) throw DimMismatch("synthesize: wrong length");
  const int m = grid_size();
  std::vector<CMat> samples(m, CMat::Zero(matrix_dim(), 1));
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < m; ++j) samples[j] += coeffs(i) * elems_[i].sample(j);
  return CircleFn::from_samples(std::move(samples));
}

CircleFn project(const InnerFn& theta, const CircleFn& f) {
  if (f.rows() != theta.dim())
    throw ShapeMismatch("project: row dimension mismatch");
  const double dist = h2_distance(f);
  if (dist > tol::analytic * std::max(1.0, l2_norm(f)))
    throw NotAnalytic("project: input has anti-analytic mass");
  const CircleFn tail =
      mul(theta.fn(), riesz_plus(mul(adjoint_fn(theta.fn()), f)));
  return sub(f, tail);
}

CircleFn kernel(const InnerFn& theta, Complex lambda, const CVec& x) {
  if (x.size() != theta.dim()) throw ShapeMismatch("kernel: direction length");
  if (std::abs(lambda) > 0.9)
    throw PointTooClose("kernel: |lambda| > 0.9");
  const int m = theta.grid_size();
  const CMat tl_adj = theta.eval(lambda).adjoint();
  const int d = theta.dim();
  std::vector<CMat> samples(m);
  for (int j = 0; j < m; ++j) {
    const double t = 2.0 * std::numbers::pi * j / m;
    const Complex z(std::cos(t), std::sin(t));
    const Complex den = 1.0 - std::conj(lambda) * z;
    samples[j] = (CMat::Identity(d, d) - theta.fn().sample(j) * tl_adj) *
                 (x / den);
  }
  return CircleFn::from_samples(std::move(samples));
}

ModelSpaceBasis basis(const InnerFn& theta, int seeds) {
  if (theta.constant())
    throw NotPure("basis: constant inner function has a trivial model space");
  const int d = theta.dim();
  const int m = theta.grid_size();

  ModelSpaceBasis out;
  out.theta_ = theta;

  if (const int n = monomial_power(theta); n > 0) {
    // K_{z^n I} = polynomials of degree < n; basis z^j e_p, index j*d + p.
    std::map<int, CMat> coeff;
    for (int j = 0; j < n; ++j)
      for (int p = 0; p < d; ++p) {
        coeff.clear();
        CMat e = CMat::Zero(d, 1);
        e(p, 0) = 1.0;
        coeff[j] = e;
        out.elems_.push_back(CircleFn::from_fourier(coeff, m));
      }
    out.gram_defect_ = 0.0;
    out.member_defect_ = 0.0;
    return out;
  }

  if (!theta.degree_hint().has_value())
    throw InfiniteDimensional(
        "basis: no degree hint; cannot certify a finite dimension");
  const int n = *theta.degree_hint();
  if (n <= 0) throw NotPure("basis: degree hint must be positive");

  int points = seeds > 0 ? seeds : n + 2;  // at least n distinct points
  for (int attempt = 0;; ++attempt) {
    std::vector<CircleFn> cand;
    cand.reserve(points * d);
    for (const Complex& lam : spiral_points(points))
      for (int p = 0; p < d; ++p) {
        CVec e = CVec::Zero(d);
        e(p) = 1.0;
        cand.push_back(kernel(theta, lam, e));
      }

    const CMat g = gram(cand);
    Eigen::SelfAdjointEigenSolver<CMat> es(g);
    const Eigen::VectorXd ev = es.eigenvalues();  // ascending
    const double top = ev(ev.size() - 1);
    int r = 0;
    for (int i = 0; i < ev.size(); ++i)
      if (ev(i) > tol::basis_rank * top) ++r;

    if (r > n)
      throw DeficientSpan("basis: kernel span exceeds the degree hint");
    if (r < n) {
      if (attempt >= 2)
        throw DeficientSpan("basis: kernel span cannot resolve the space");
      points += n + 1;
      continue;
    }

    // Top-n eigenpairs give an orthonormal set; a symmetric polish step
    // removes the residual first-order error from the grid quadrature.
    CMat w(static_cast<int>(cand.size()), n);
    for (int i = 0; i < n; ++i) {
      const int idx = static_cast<int>(ev.size()) - 1 - i;
      w.col(i) = es.eigenvectors().col(idx) / std::sqrt(ev(idx));
    }
    std::vector<CircleFn> b = combine(cand, w);

    const CMat g2 = gram(b);
    Eigen::SelfAdjointEigenSolver<CMat> es2(g2);
    Eigen::VectorXd ev2 = es2.eigenvalues();
    for (int i = 0; i < ev2.size(); ++i)
      ev2(i) = 1.0 / std::sqrt(std::max(ev2(i), 1e-300));
    const CMat polish =
        es2.eigenvectors() * ev2.asDiagonal() * es2.eigenvectors().adjoint();
    b = combine(b, polish);

    out.elems_ = std::move(b);
    out.gram_defect_ = operator_norm(gram(out.elems_) - CMat::Identity(n, n));
    double member = 0.0;
    for (const CircleFn& e : out.elems_)
      member = std::max(member, l2_norm(sub(e, project(theta, e))));
    out.member_defect_ = member;
    if (out.gram_defect_ > 1e-9 || out.member_defect_ > tol::basis_member)
      throw DeficientSpan("basis: grid too coarse to certify the basis");
    return out;
  }
}

double inclusion_defect(const InnerFn& theta1, const InnerFn& theta2) {
  if (theta1.dim() != theta2.dim())
    throw DimMismatch("inclusion_defect: dimension mismatch");
  const ModelSpaceBasis b1 = basis(theta1);
  // Distance from each basis element to Theta2 H^2; since project() returns
  // b - Theta2 P_+(Theta2^* b), its norm is exactly that distance.
  double worst = 0.0;
  for (int i = 0; i < b1.dim(); ++i)
    worst = std::max(worst, l2_norm(project(theta2, b1.element(i))));
  return worst;
}

}  // namespace msk
