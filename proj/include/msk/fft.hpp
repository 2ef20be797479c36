#pragma once

#include <complex>
#include <vector>

namespace msk::detail {

// Iterative radix-2 transform, in place, no normalization:
//   forward:  a_k <- sum_j a_j exp(-2*pi*i*j*k/N)
//   inverse:  a_j <- sum_k a_k exp(+2*pi*i*j*k/N)
// so inverse(forward(x)) == N * x.  N must be a power of two.
void fft_radix2(std::vector<std::complex<double>>& a, bool inverse);

bool is_pow2(int n);

}  // namespace msk::detail
