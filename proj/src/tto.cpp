#include "msk/tto.hpp"

#include <cstdint>
#include <cstring>
#include <sstream>

namespace msk {

namespace {

void fnv_feed(std::uint64_t& h, const void* data, std::size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
}

std::string theta_id(const InnerFn& theta) {
  if (!theta.spec_json().empty()) return theta.spec_json();
  return symbol_digest(theta.fn());
}

}  // namespace

std::string symbol_digest(const CircleFn& phi) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  const int m = phi.grid_size();
  const int shape[3] = {phi.rows(), phi.cols(), m};
  fnv_feed(h, shape, sizeof(shape));
  double scale = 0.0;
  for (int k = -m / 2; k <= m / 2 - 1; ++k)
    scale = std::max(scale, phi.fourier_coeff(k).norm());
  const double tau = 1e-15 * scale;
  for (int k = -m / 2; k <= m / 2 - 1; ++k) {
    const CMat& c = phi.fourier_coeff(k);
    if (c.norm() <= tau) continue;
    fnv_feed(h, &k, sizeof(k));
    for (int i = 0; i < c.rows(); ++i)
      for (int j = 0; j < c.cols(); ++j) {
        const double re = c(i, j).real(), im = c(i, j).imag();
        fnv_feed(h, &re, sizeof(re));
        fnv_feed(h, &im, sizeof(im));
      }
  }
  std::ostringstream out;
  out << std::hex << h;
  return out.str();
}

TTOMatrix build(const ModelSpaceBasis& b1, const ModelSpaceBasis& b2,
                const CircleFn& phi) {
  const int d = b1.matrix_dim();
  if (b2.matrix_dim() != d || phi.rows() != d || phi.cols() != d)
    throw ShapeMismatch("build: matrix dimension mismatch");
  if (b1.grid_size() != phi.grid_size() || b2.grid_size() != phi.grid_size())
    throw ShapeMismatch("build: grid size mismatch");

  TTOMatrix out;
  out.mat = CMat(b2.dim(), b1.dim());
  double worst_alias = 0.0;
  for (int j = 0; j < b1.dim(); ++j) {
    const CircleFn col = mul(phi, b1.element(j));
    col.require_exact(tol::alias);
    worst_alias = std::max(worst_alias, col.budget().alias);
    for (int i = 0; i < b2.dim(); ++i)
      out.mat(i, j) = inner_product(col, b2.element(i));
  }
  out.theta1_spec = theta_id(b1.theta());
  out.theta2_spec = theta_id(b2.theta());
  out.symbol_id = symbol_digest(phi);
  out.grid_tol = worst_alias;
  return out;
}

CMat block_toeplitz(int n_blk, int m_blk, const std::map<int, CMat>& delta) {
  if (n_blk < 1 || m_blk < 1)
    throw BadShape("block_toeplitz: block counts must be positive");
  if (m_blk > n_blk)
    throw BadShape("block_toeplitz: requires m <= n");
  if (delta.empty()) throw BadShape("block_toeplitz: empty dictionary");
  const int d = static_cast<int>(delta.begin()->second.rows());
  for (const auto& [s, blk] : delta)
    if (blk.rows() != d || blk.cols() != d)
      throw ShapeMismatch("block_toeplitz: inconsistent block shapes");

  CMat out = CMat::Zero(m_blk * d, n_blk * d);
  for (int r = 0; r < m_blk; ++r)
    for (int c = 0; c < n_blk; ++c) {
      const auto it = delta.find(c - r);
      if (it != delta.end())
        out.block(r * d, c * d, d, d) = it->second;
    }
  return out;
}

double adjoint_pair_check(const ModelSpaceBasis& b1, const ModelSpaceBasis& b2,
                          const CircleFn& phi) {
  const TTOMatrix fwd = build(b1, b2, phi);
  const TTOMatrix rev = build(b2, b1, adjoint_fn(phi));
  return operator_norm(fwd.mat.adjoint() - rev.mat);
}

}  // namespace msk
