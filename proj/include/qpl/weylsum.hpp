#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "qpl/types.hpp"

namespace qpl::weylsum {

enum class GridKind { smooth_h, sharp_g };

// Uniform samples of an exponential sum at alpha = j/M, M a power of two.
// Conjugate symmetry values[M-j] == conj(values[j]) holds bitwise: phases are
// drawn from a mirrored root table and summed in a fixed order.
struct WeylGrid {
    SmoothParams params;
    double delta = 0.0;  // lower cutoff, sharp_g only
    i64 M = 0;
    GridKind kind = GridKind::smooth_h;
    std::vector<std::complex<double>> values;
};

// alpha * n mod 1 with an fma-compensated product; exact enough for n < 2^52.
inline double frac_mul(double alpha, u64 n) {
    const double nn = static_cast<double>(n);
    const double p = alpha * nn;
    const double e = std::fma(alpha, nn, -p);
    double r = (p - std::floor(p)) + e;
    r -= std::floor(r);
    return r;
}

i64 default_grid_size(i64 P);  // max(2^12, 16 P^4) rounded up to a power of two

// h(alpha; P, R) = sum_{x in A(P,R)} e(alpha x^4) on the M-point grid
WeylGrid eval_h_grid(const SmoothParams& params, i64 M);

// g(alpha) = sum_{delta P < x <= P} e(alpha x^4) on the M-point grid
WeylGrid eval_g_grid(i64 P, double delta, i64 M);

// Off-grid point evaluation; fourth_powers holds x^4 for the support.
std::complex<double> eval_point(const std::vector<u64>& fourth_powers, double alpha);

std::vector<u64> fourth_powers_of_support(const SmoothParams& params);
std::vector<u64> fourth_powers_of_range(i64 P, double delta);

// r_k(m) = #{ (x_1..x_k) in A(P,R)^k : sum x_i^4 = m }, m in [0, k P^4]
struct RepresentationProfile {
    i64 k = 0;
    i64 P4 = 0;
    std::vector<u64> counts;

    u64 at(i64 m) const {
        return (m < 0 || m >= static_cast<i64>(counts.size()))
                   ? 0
                   : counts[static_cast<std::size_t>(m)];
    }
};

RepresentationProfile representation_profile(const SmoothParams& params, i64 k);

// int_0^1 |h|^t dalpha for even t, exactly: sum_m r_{t/2}(m)^2
u64 exact_even_moment(const SmoothParams& params, i64 t);

// M^-1 sum_j |values[j]|^t  (trapezoid on the periodic integrand)
double numeric_moment(const WeylGrid& grid, double t);

namespace serial {
WeylGrid eval_h_grid(const SmoothParams& params, i64 M);
WeylGrid eval_g_grid(i64 P, double delta, i64 M);
RepresentationProfile representation_profile(const SmoothParams& params, i64 k);
double numeric_moment(const WeylGrid& grid, double t);
}  // namespace serial

}  // namespace qpl::weylsum
