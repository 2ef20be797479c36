#pragma once

#include "msk/inner.hpp"
#include "msk/rng.hpp"

namespace msk {

// Seeded test instance: two inner functions, two strict contractions, and a
// Laurent symbol of degree <= 3, all of matrix size d.
struct Instance {
  std::uint64_t seed = 0;
  int d = 1;
  int grid = 0;
  InnerFn theta1;
  InnerFn theta2;
  CMat w1;
  CMat w2;
  CircleFn phi;
};

// Deterministic inner function from a seeded stream.  Monomial kind gives
// z^n I with n*d <= 4; product kind leads with a full-rank factor (keeping
// ||Theta(0)|| <= 0.6, hence purity) followed by rank-one factors, total
// degree <= 4.
InnerFn seeded_inner(Rng& rng, int d, int grid, bool monomial_kind);

// Instance `index` of the family rooted at base_seed.  d cycles 1..max_dim
// and the inner-function kinds alternate so every (d, kind) combination
// appears.  Contractions have norm in [0.3, 0.8].
Instance make_instance(std::uint64_t base_seed, int index, int grid,
                       int max_dim = 3);

}  // namespace msk
