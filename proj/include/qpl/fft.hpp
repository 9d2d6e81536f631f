#pragma once

#include <complex>
#include <vector>

#include "qpl/types.hpp"

namespace qpl::fft {

// In-place radix-2 transform, length a power of two.
// sign = -1: forward, A[n] = sum_j a[j] e(-nj/M).  sign = +1: inverse,
// unnormalized.  Twiddles come from one precomputed table, so there is no
// recurrence drift.
void transform_pow2(std::vector<std::complex<double>>& a, int sign);

}  // namespace qpl::fft
