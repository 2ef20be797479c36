#include "msk/inner.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <json.hpp>

namespace msk {

namespace {

using nlohmann::ordered_json;

ordered_json mat_json(const CMat& a) {
  ordered_json re = ordered_json::array();
  ordered_json im = ordered_json::array();
  for (int i = 0; i < a.rows(); ++i) {
    ordered_json rrow = ordered_json::array();
    ordered_json irow = ordered_json::array();
    for (int j = 0; j < a.cols(); ++j) {
      rrow.push_back(a(i, j).real());
      irow.push_back(a(i, j).imag());
    }
    re.push_back(rrow);
    im.push_back(irow);
  }
  return ordered_json{{"re", re}, {"im", im}};
}

Complex blaschke_scalar(Complex w, Complex z) {
  const double m = std::abs(w);
  if (m == 0.0) return z;
  return (m / w) * (w - z) / (1.0 - std::conj(w) * z);
}

}  // namespace

InnerFn certify(CircleFn fn, std::optional<int> degree_hint,
                std::string spec_json) {
  if (fn.empty()) throw BadShape("certify: empty function");
  if (fn.rows() != fn.cols()) throw BadShape("certify: matrix not square");
  const int d = fn.rows();
  const int m = fn.grid_size();
  const CMat id = CMat::Identity(d, d);

  double defect = 0.0;
  for (int j = 0; j < m; ++j) {
    const CMat& t = fn.sample(j);
    defect = std::max(defect, operator_norm(t.adjoint() * t - id));
    if (defect > tol::inner)
      throw NotInner("certify: boundary values not unitary within tolerance");
  }

  // Constant detection against the mean value.
  const CMat t0 = fn.sample(0);
  double dev = 0.0;
  for (int j = 0; j < m; ++j) dev = std::max(dev, (fn.sample(j) - t0).norm());
  const bool constant = dev <= 1e-12 * std::max(1.0, t0.norm());

  if (!fn.budget().exact()) {
    // Re-measure: chained products accumulate pessimistic bands.  Folding
    // already charged to the budget is kept (measurement cannot see it).
    const double old_alias = fn.budget().alias;
    CircleFn measured = CircleFn::from_samples(fn.samples());
    Budget b = measured.budget();
    b.alias = std::max(b.alias, old_alias);
    fn = CircleFn::from_samples(fn.samples(), b);
  }

  const double purity = operator_norm(fn.eval_disk(Complex(0.0, 0.0)));
  if (!constant && purity >= 1.0 - tol::eps_strict)
    throw NotPure("certify: ||Theta(0)|| too close to 1");

  InnerFn out;
  out.fn_ = std::move(fn);
  out.defect_ = defect;
  out.purity_ = purity;
  out.constant_ = constant;
  out.hint_ = degree_hint;
  out.spec_ = std::move(spec_json);
  return out;
}

InnerFn monomial(int n, int d, int grid_size) {
  if (d < 1) throw BadShape("monomial: d must be positive");
  if (n < 1 || 4 * n > grid_size)
    throw BadDegree("monomial: need 1 <= n and 4n <= grid size");
  std::map<int, CMat> c;
  c[n] = CMat::Identity(d, d);
  std::ostringstream spec;
  spec << R"({"type":"monomial","n":)" << n << R"(,"d":)" << d << "}";
  return certify(CircleFn::from_fourier(c, grid_size), n * d, spec.str());
}

InnerFn blaschke_potapov(const std::vector<BlaschkeFactor>& factors, int d,
                         int grid_size) {
  if (d < 1) throw BadShape("blaschke_potapov: d must be positive");
  const CMat id = CMat::Identity(d, d);

  int hint = 0;
  ordered_json jfactors = ordered_json::array();
  for (const auto& f : factors) {
    if (std::abs(f.w) > 0.9)
      throw ZeroTooLarge("blaschke_potapov: |w| > 0.9");
    if (f.projection.rows() != d || f.projection.cols() != d)
      throw ShapeMismatch("blaschke_potapov: projection has wrong shape");
    if (!is_projection(f.projection))
      throw NotProjection("blaschke_potapov: factor P is not a projection");
    hint += rank(f.projection, tol::basis_rank);
    jfactors.push_back(ordered_json{
        {"w", {f.w.real(), f.w.imag()}}, {"P", mat_json(f.projection)}});
  }

  std::vector<CMat> samples(grid_size, id);
  for (int j = 0; j < grid_size; ++j) {
    const double t = 2.0 * std::numbers::pi * j / grid_size;
    const Complex z(std::cos(t), std::sin(t));
    CMat acc = id;
    for (const auto& f : factors)
      acc = acc * (blaschke_scalar(f.w, z) * f.projection + (id - f.projection));
    samples[j] = acc;
  }

  ordered_json spec{{"type", "bp"}, {"d", d}, {"factors", jfactors}};
  return certify(CircleFn::from_samples(std::move(samples)), hint, spec.dump());
}

InnerFn crofoot_inner(const InnerFn& theta, const CMat& w) {
  const int d = theta.dim();
  if (w.rows() != d || w.cols() != d)
    throw ShapeMismatch("crofoot_inner: W has wrong shape");
  if (theta.constant())
    throw NotPure("crofoot_inner: constant inner function is not pure");
  const CMat dw = defect(w, DefectSide::right);
  const CMat dws = defect(w, DefectSide::left);
  const CMat id = CMat::Identity(d, d);
  const int m = theta.grid_size();

  std::vector<CMat> samples(m);
  for (int j = 0; j < m; ++j) {
    const CMat& t = theta.fn().sample(j);
    samples[j] = -w + dws * solve(id - t * w.adjoint(), t * dw);
  }

  ordered_json spec{{"type", "crofoot"}};
  if (!theta.spec_json().empty())
    spec["base"] = ordered_json::parse(theta.spec_json());
  spec["W"] = mat_json(w);
  return certify(CircleFn::from_samples(std::move(samples)),
                 theta.degree_hint(), spec.dump());
}

}  // namespace msk
