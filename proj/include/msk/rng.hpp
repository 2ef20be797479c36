#pragma once

#include <cstdint>
#include <map>
#include <random>

#include "msk/matops.hpp"

namespace msk {

// Deterministic random source.  All randomness in the toolkit flows through
// this class from an explicit 64-bit seed; no std distributions are used so a
// (seed, call sequence) pair yields the same stream on every platform with
// IEEE doubles.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t raw() { return gen_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int uniform_int(int lo, int hi);  // inclusive bounds

  Complex unit_complex();  // |z| = 1
  Complex gaussian();      // complex standard normal (Box-Muller)

  CMat gaussian_matrix(int rows, int cols);
  CMat unitary(int d);                       // Haar-ish via QR with phase fix
  CMat projection(int d, int rank);          // rank-r orthogonal projection
  CMat contraction(int d, double norm_cap);  // ||W|| <= norm_cap, random directions
  CMat contraction_exact(int d, double norm);  // ||W|| == norm

  // Laurent polynomial coefficients: Gaussian d x d matrices for |k| <= degree.
  std::map<int, CMat> laurent(int d, int degree, double scale = 1.0);

 private:
  std::mt19937_64 gen_;
};

// Stable derived seed for instance i of a family.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

}  // namespace msk
