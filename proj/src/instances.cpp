#include "msk/instances.hpp"

#include <algorithm>

namespace msk {

InnerFn seeded_inner(Rng& rng, int d, int grid, bool monomial_kind) {
  if (monomial_kind) {
    const int n_max = std::max(1, 4 / d);
    return monomial(rng.uniform_int(1, n_max), d, grid);
  }
  std::vector<BlaschkeFactor> factors;
  // Full-rank head keeps the product pure: ||Theta(0)|| <= |w0| <= 0.6.
  BlaschkeFactor head;
  head.w = 0.6 * rng.uniform() * rng.unit_complex();
  head.projection = CMat::Identity(d, d);
  factors.push_back(head);
  const int cap = std::clamp(4 - d, 0, 3);  // total degree stays <= 4
  const int extra = rng.uniform_int(0, cap);
  for (int i = 0; i < extra; ++i) {
    BlaschkeFactor f;
    f.w = 0.75 * rng.uniform() * rng.unit_complex();
    f.projection = rng.projection(d, 1);
    factors.push_back(f);
  }
  return blaschke_potapov(factors, d, grid);
}

Instance make_instance(std::uint64_t base_seed, int index, int grid,
                       int max_dim) {
  Instance inst;
  inst.seed = derive_seed(base_seed, static_cast<std::uint64_t>(index));
  Rng rng(inst.seed);
  inst.d = 1 + index % max_dim;
  inst.grid = grid;
  const bool kind1 = (index / max_dim) % 2 == 0;
  inst.theta1 = seeded_inner(rng, inst.d, grid, kind1);
  inst.theta2 = seeded_inner(rng, inst.d, grid, !kind1);
  inst.w1 = rng.contraction_exact(inst.d, rng.uniform(0.3, 0.8));
  inst.w2 = rng.contraction_exact(inst.d, rng.uniform(0.3, 0.8));
  inst.phi = CircleFn::from_fourier(rng.laurent(inst.d, 3), grid);
  return inst;
}

}  // namespace msk
