#include "msk/matops.hpp"

#include <algorithm>
#include <cmath>

namespace msk {

double operator_norm(const CMat& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMat> svd(a);
  return svd.singularValues()(0);
}

double frob_norm(const CMat& a) { return a.norm(); }

CMat hermitian_sqrt(const CMat& a, double psd_slack) {
  if (a.rows() != a.cols()) throw BadShape("hermitian_sqrt: matrix not square");
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if (operator_norm(a - a.adjoint()) > psd_slack * scale)
    throw NotHermitian("hermitian_sqrt: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (a + a.adjoint()));
  Eigen::VectorXd ev = es.eigenvalues();
  for (int i = 0; i < ev.size(); ++i) {
    if (ev(i) < -psd_slack * scale)
      throw NotPSD("hermitian_sqrt: negative eigenvalue beyond slack");
    ev(i) = std::sqrt(std::max(ev(i), 0.0));
  }
  CMat s = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
  return 0.5 * (s + s.adjoint());  // keep the result exactly Hermitian
}

CMat defect(const CMat& w, DefectSide side, double margin) {
  if (operator_norm(w) >= 1.0 - margin)
    throw NotStrictContraction("defect: ||W|| >= 1 - margin");
  const CMat id_dom = CMat::Identity(w.cols(), w.cols());
  const CMat id_cod = CMat::Identity(w.rows(), w.rows());
  if (side == DefectSide::right) return hermitian_sqrt(id_dom - w.adjoint() * w);
  return hermitian_sqrt(id_cod - w * w.adjoint());
}

int rank(const CMat& a, double rel_tol) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<CMat> svd(a);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > rel_tol * sv(0)) ++r;
  return r;
}

CMat solve(const CMat& a, const CMat& b) {
  if (a.rows() != a.cols()) throw BadShape("solve: matrix not square");
  if (a.rows() != b.rows()) throw ShapeMismatch("solve: row mismatch");
  Eigen::PartialPivLU<CMat> lu(a);
  const auto diag = lu.matrixLU().diagonal();
  double dmax = 0.0, dmin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < diag.size(); ++i) {
    const double d = std::abs(diag(i));
    dmax = std::max(dmax, d);
    dmin = std::min(dmin, d);
  }
  if (dmax == 0.0 || dmin < dmax / tol::cond_max)
    throw Singular("solve: pivot ratio below 1/cond_max");
  return lu.solve(b);
}

CMat inverse(const CMat& a) {
  return solve(a, CMat::Identity(a.rows(), a.cols()));
}

bool is_projection(const CMat& p, double slack) {
  if (p.rows() != p.cols()) return false;
  if (operator_norm(p - p.adjoint()) > slack) return false;
  return operator_norm(p * p - p) <= slack;
}

}  // namespace msk
