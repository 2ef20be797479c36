#include "msk/circle_fun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "msk/fft.hpp"

namespace msk {

namespace {

constexpr double kMeasureRel = 1e-15;  // relative threshold when measuring support
constexpr double kDefaultRate = 0.9;   // assumed tail decay for measured budgets
constexpr double kRateCap = 0.95;      // combined rates beyond this are treated as unknown
const double kInf = std::numeric_limits<double>::infinity();

int wrap_index(int k, int m) { return k >= 0 ? k : k + m; }

double geo(double rate) { return 1.0 / (1.0 - rate); }

// Extrapolated L2 mass of the tail outside the representable window.
double window_tail(const Budget& b, int m) {
  if (b.amp == 0.0) {
    const bool inside = b.lo >= -m / 2 && b.hi <= m / 2 - 1;
    return inside ? 0.0 : kInf;
  }
  const int gap_hi = (m / 2 - 1) - b.hi;
  const int gap_lo = b.lo - (-m / 2);
  if (gap_hi < 0 || gap_lo < 0) return kInf;
  if (b.rate == 0.0) return 0.0;
  if (b.rate >= kRateCap) return kInf;
  return b.amp * (std::pow(b.rate, gap_hi + 1) + std::pow(b.rate, gap_lo + 1)) *
         geo(b.rate);
}

}  // namespace

CircleFn::CircleFn(int rows, int cols, int grid, Budget b,
                   std::shared_ptr<const Payload> p)
    : rows_(rows), cols_(cols), grid_(grid), budget_(b), p_(std::move(p)) {}

void CircleFn::ensure_coeffs() const {
  std::call_once(p_->once, [this] {
    const int m = grid_;
    auto& coeffs = p_->coeffs;
    coeffs.assign(m, CMat::Zero(rows_, cols_));
    std::vector<Complex> chan(m);
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) {
        for (int j = 0; j < m; ++j) chan[j] = p_->samples[j](r, c);
        detail::fft_radix2(chan, /*inverse=*/false);
        const double inv_m = 1.0 / m;
        for (int j = 0; j < m; ++j) coeffs[j](r, c) = chan[j] * inv_m;
      }
  });
}

CircleFn CircleFn::from_samples(std::vector<CMat> samples, const Budget& known) {
  const int m = static_cast<int>(samples.size());
  if (!detail::is_pow2(m) || m < 2)
    throw BadShape("from_samples: grid size must be a power of two >= 2");
  const int r = static_cast<int>(samples[0].rows());
  const int c = static_cast<int>(samples[0].cols());
  if (r == 0 || c == 0) throw BadShape("from_samples: empty matrices");
  for (const CMat& s : samples)
    if (s.rows() != r || s.cols() != c)
      throw ShapeMismatch("from_samples: inconsistent sample shapes");
  auto p = std::make_shared<Payload>();
  p->samples = std::move(samples);
  return CircleFn(r, c, m, known, std::move(p));
}

CircleFn CircleFn::from_samples(std::vector<CMat> samples) {
  CircleFn f = from_samples(std::move(samples), Budget{});
  f.ensure_coeffs();
  const int m = f.grid_;
  const auto& coeffs = f.p_->coeffs;

  double scale = 0.0;
  for (const CMat& ck : coeffs) scale = std::max(scale, ck.norm());
  Budget b;
  if (scale == 0.0) {
    f.budget_ = b;  // exact zero
    return f;
  }
  const double tau = kMeasureRel * scale;
  int lo = m, hi = -m;
  for (int k = -m / 2; k <= m / 2 - 1; ++k) {
    if (coeffs[wrap_index(k, m)].norm() > tau) {
      lo = std::min(lo, k);
      hi = std::max(hi, k);
    }
  }
  if (lo > hi) {  // everything under threshold; treat as constant-scale noise
    lo = 0;
    hi = 0;
  }
  b.lo = lo;
  b.hi = hi;
  b.rate = kDefaultRate;
  b.amp = tau;
  // Spectrum still alive at the window edges indicates folding; extrapolate it.
  const double edge =
      coeffs[wrap_index(-m / 2, m)].norm() + coeffs[m / 2 - 1].norm();
  b.alias = (edge + tau) * b.rate * geo(b.rate);
  f.budget_ = b;
  return f;
}

CircleFn CircleFn::from_fourier(const std::map<int, CMat>& coeffs, int grid_size) {
  if (!detail::is_pow2(grid_size) || grid_size < 2)
    throw BadShape("from_fourier: grid size must be a power of two >= 2");
  if (coeffs.empty()) throw BadShape("from_fourier: no coefficients");
  const int r = static_cast<int>(coeffs.begin()->second.rows());
  const int c = static_cast<int>(coeffs.begin()->second.cols());
  const int m = grid_size;
  std::vector<CMat> natural(m, CMat::Zero(r, c));
  Budget b;
  b.lo = coeffs.begin()->first;
  b.hi = coeffs.rbegin()->first;
  for (const auto& [k, mat] : coeffs) {
    if (k < -m / 2 || k > m / 2 - 1)
      throw BadIndex("from_fourier: coefficient index outside window");
    if (mat.rows() != r || mat.cols() != c)
      throw ShapeMismatch("from_fourier: inconsistent coefficient shapes");
    natural[wrap_index(k, m)] = mat;
  }

  auto p = std::make_shared<Payload>();
  p->samples.assign(m, CMat::Zero(r, c));
  std::vector<Complex> chan(m);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) {
      for (int k = 0; k < m; ++k) chan[k] = natural[k](i, j);
      detail::fft_radix2(chan, /*inverse=*/true);
      for (int k = 0; k < m; ++k) p->samples[k](i, j) = chan[k];
    }
  std::call_once(p->once, [&] { p->coeffs = std::move(natural); });
  return CircleFn(r, c, m, b, std::move(p));
}

CircleFn CircleFn::constant(const CMat& value, int grid_size) {
  std::map<int, CMat> c;
  c[0] = value;
  return from_fourier(c, grid_size);
}

CircleFn CircleFn::zero(int rows, int cols, int grid_size) {
  return constant(CMat::Zero(rows, cols), grid_size);
}

Complex CircleFn::grid_point(int j) const {
  const double t = 2.0 * std::numbers::pi * j / grid_;
  return {std::cos(t), std::sin(t)};
}

const CMat& CircleFn::sample(int j) const {
  if (j < 0 || j >= grid_) throw BadIndex("sample: index out of range");
  return p_->samples[j];
}

const std::vector<CMat>& CircleFn::samples() const { return p_->samples; }

const CMat& CircleFn::fourier_coeff(int k) const {
  if (k < -grid_ / 2 || k > grid_ / 2 - 1)
    throw BadIndex("fourier_coeff: index outside [-M/2, M/2)");
  ensure_coeffs();
  return p_->coeffs[wrap_index(k, grid_)];
}

void CircleFn::require_exact(double alias_tol) const {
  const double s = std::max(sup_frobenius(), 1.0);
  if (!(budget_.alias <= alias_tol * s))
    throw DegreeOverflow("require_exact: aliasing budget exceeded");
}

CMat CircleFn::eval_disk(Complex lambda) const {
  if (std::abs(lambda) >= 1.0)
    throw PointTooClose("eval_disk: point not strictly inside the disk");
  ensure_coeffs();
  // Horner over nonnegative coefficients, highest power first.
  CMat acc = CMat::Zero(rows_, cols_);
  for (int k = grid_ / 2 - 1; k >= 0; --k)
    acc = acc * lambda + p_->coeffs[k];
  return acc;
}

double CircleFn::sup_frobenius() const {
  double s = 0.0;
  for (const CMat& v : p_->samples) s = std::max(s, v.norm());
  return s;
}

CircleFn mul(const CircleFn& f, const CircleFn& g) {
  if (f.grid_ != g.grid_) throw ShapeMismatch("mul: grid size mismatch");
  if (f.cols_ != g.rows_) throw ShapeMismatch("mul: inner dimension mismatch");
  const int m = f.grid_;

  const Budget& a = f.budget_;
  const Budget& b = g.budget_;
  Budget out;
  out.lo = a.lo + b.lo;
  out.hi = a.hi + b.hi;
  out.rate = std::max(a.rate, b.rate);
  const bool band_overflow = out.lo < -m / 2 || out.hi > m / 2 - 1;
  if (band_overflow && a.exact() && b.exact())
    throw DegreeOverflow("mul: exact band product exceeds coefficient window");

  const double sf = f.sup_frobenius();
  const double sg = g.sup_frobenius();
  if (a.amp == 0.0 && b.amp == 0.0) {
    out.amp = 0.0;
  } else if (out.rate >= kRateCap) {
    out.amp = kInf;
  } else {
    const double gg = geo(out.rate);
    out.amp = gg * (a.amp * sg + b.amp * sf + a.amp * b.amp * gg);
  }
  std::vector<CMat> samples(m);
  for (int j = 0; j < m; ++j) samples[j] = f.p_->samples[j] * g.p_->samples[j];

  if (!band_overflow) {
    out.alias = a.alias * (sg + b.alias) + b.alias * (sf + a.alias) +
                window_tail(out, m);
    return CircleFn::from_samples(std::move(samples), out);
  }

  // At least one factor is measured (non-exact) and only its extrapolated
  // tail pushes the formal band sum outside the window.  Measured budgets
  // come from geometrically decaying spectra, so whatever mass of the
  // product folds back is visible at the window edges of the product
  // itself: re-measure and carry the inputs' folded-noise terms on top.
  CircleFn prod = CircleFn::from_samples(std::move(samples));
  Budget mb = prod.budget_;
  mb.rate = std::max({mb.rate, a.rate, b.rate});
  mb.amp = std::max(mb.amp, out.amp);
  mb.alias += a.alias * sg + b.alias * sf;
  prod.budget_ = mb;
  return prod;
}

CircleFn add(const CircleFn& f, const CircleFn& g) {
  if (f.grid_ != g.grid_) throw ShapeMismatch("add: grid size mismatch");
  if (f.rows_ != g.rows_ || f.cols_ != g.cols_)
    throw ShapeMismatch("add: shape mismatch");
  Budget out;
  out.lo = std::min(f.budget_.lo, g.budget_.lo);
  out.hi = std::max(f.budget_.hi, g.budget_.hi);
  out.rate = std::max(f.budget_.rate, g.budget_.rate);
  out.amp = f.budget_.amp + g.budget_.amp;
  out.alias = f.budget_.alias + g.budget_.alias;
  std::vector<CMat> samples(f.grid_);
  for (int j = 0; j < f.grid_; ++j)
    samples[j] = f.p_->samples[j] + g.p_->samples[j];
  return CircleFn::from_samples(std::move(samples), out);
}

CircleFn sub(const CircleFn& f, const CircleFn& g) {
  return add(f, scale(g, Complex(-1.0, 0.0)));
}

CircleFn scale(const CircleFn& f, Complex a) {
  Budget out = f.budget_;
  out.amp *= std::abs(a);
  out.alias *= std::abs(a);
  std::vector<CMat> samples(f.grid_);
  for (int j = 0; j < f.grid_; ++j) samples[j] = a * f.p_->samples[j];
  return CircleFn::from_samples(std::move(samples), out);
}

CircleFn adjoint_fn(const CircleFn& f) {
  Budget out = f.budget_;
  out.lo = -f.budget_.hi;
  out.hi = -f.budget_.lo;
  if (out.hi > f.grid_ / 2 - 1) {
    // the k = -m/2 bucket is its own reflection on the grid; keep the band
    // inside the window and count that bucket's mass as alias instead.
    out.hi = f.grid_ / 2 - 1;
    out.alias += f.fourier_coeff(-f.grid_ / 2).norm();
  }
  std::vector<CMat> samples(f.grid_);
  for (int j = 0; j < f.grid_; ++j) samples[j] = f.p_->samples[j].adjoint();
  return CircleFn::from_samples(std::move(samples), out);
}

CircleFn riesz_project(const CircleFn& f, bool keep_nonnegative) {
  f.ensure_coeffs();
  const int m = f.grid_;
  std::vector<CMat> natural(m, CMat::Zero(f.rows_, f.cols_));
  for (int k = -m / 2; k <= m / 2 - 1; ++k) {
    const bool keep = keep_nonnegative ? (k >= 0) : (k < 0);
    if (keep) natural[k >= 0 ? k : k + m] = f.p_->coeffs[k >= 0 ? k : k + m];
  }

  auto p = std::make_shared<CircleFn::Payload>();
  p->samples.assign(m, CMat::Zero(f.rows_, f.cols_));
  std::vector<Complex> chan(m);
  for (int i = 0; i < f.rows_; ++i)
    for (int j = 0; j < f.cols_; ++j) {
      for (int k = 0; k < m; ++k) chan[k] = natural[k](i, j);
      detail::fft_radix2(chan, /*inverse=*/true);
      for (int k = 0; k < m; ++k) p->samples[k](i, j) = chan[k];
    }
  std::call_once(p->once, [&] { p->coeffs = std::move(natural); });

  Budget b = f.budget_;
  if (keep_nonnegative) {
    b.lo = std::max(b.lo, 0);
    b.hi = std::max(b.hi, 0);
  } else {
    b.lo = std::min(b.lo, -1);
    b.hi = std::min(b.hi, -1);
  }
  return CircleFn(f.rows_, f.cols_, m, b, std::move(p));
}

CircleFn riesz_plus(const CircleFn& f) { return riesz_project(f, true); }
CircleFn riesz_minus(const CircleFn& f) { return riesz_project(f, false); }

double h2_distance(const CircleFn& f) {
  double mass = 0.0;
  for (int k = -f.grid_size() / 2; k < 0; ++k) {
    const double n = f.fourier_coeff(k).norm();
    mass += n * n;
  }
  return std::sqrt(mass);
}

Complex inner_product(const CircleFn& f, const CircleFn& g) {
  if (f.grid_size() != g.grid_size())
    throw ShapeMismatch("inner_product: grid size mismatch");
  if (f.rows() != g.rows() || f.cols() != g.cols())
    throw ShapeMismatch("inner_product: shape mismatch");
  Complex acc(0.0, 0.0);
  for (int j = 0; j < f.grid_size(); ++j)
    acc += (f.sample(j).cwiseProduct(g.sample(j).conjugate())).sum();
  return acc / static_cast<double>(f.grid_size());
}

double l2_norm(const CircleFn& f) {
  double acc = 0.0;
  for (int j = 0; j < f.grid_size(); ++j) {
    const double n = f.sample(j).norm();
    acc += n * n;
  }
  return std::sqrt(acc / f.grid_size());
}

}  // namespace msk
