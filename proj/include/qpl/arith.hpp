#pragma once

#include <complex>
#include <vector>

#include "qpl/types.hpp"

namespace qpl::arith {

// A(P,R), ascending.  1 is always a member.
std::vector<i64> smooth_set(const SmoothParams& params);

// Multiplicative function kappa from the prime-power table
//   kappa(p^(4l))   = p^-l,        kappa(p^(4l+1)) = 4 p^(-l-1/2),
//   kappa(p^(4l+2)) = p^(-l-1),    kappa(p^(4l+3)) = p^(-l-1).
double kappa(i64 q);

// Complete quartic Gauss sum S(q,a) = sum_{r=1}^{q} e(a r^4 / q),
// by direct O(q) summation over a length-q root table.
std::complex<double> gauss_sum(i64 q, i64 a);

// rho(q) = #{ (x1..x4) in [1,q]^4 : x1^4 + x2^4 == x3^4 + x4^4 (mod q) },
// computed as sum_m c(m)^2 where c = pair-sum histogram of fourth powers.
u64 congruence_count_rho(i64 q);

// M(q) = #{ x in [1,q]^s : L1(x^4) == 0 and L2(x^4) == 0 (mod q) },
// by per-variable convolution over (Z/q)^2.
u64 congruence_count_M(i64 q, const QuarticPairSystem& system);

// d[t] = #{ x in [1,q] : x^4 == t (mod q) }.  Shared with the circle module.
std::vector<u64> fourth_power_residue_counts(i64 q);

// All S(q,c) for c in [0,q) at once (cache for the singular series).
std::vector<std::complex<double>> gauss_sum_table(i64 q);

// e(k/q) for k in [0,q), with exact mirror symmetry root[q-k] = conj(root[k]).
std::vector<std::complex<double>> unit_roots(i64 q);

// Plain-loop references kept for tests and the kernel benchmark.
namespace serial {
u64 congruence_count_rho(i64 q);                                  // quadruple loop
u64 congruence_count_M(i64 q, const QuarticPairSystem& system);   // q^s enumeration
}  // namespace serial

}  // namespace qpl::arith
