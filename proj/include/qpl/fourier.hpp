#pragma once

#include <vector>

#include "qpl/circle.hpp"
#include "qpl/types.hpp"
#include "qpl/weylsum.hpp"

namespace qpl::fourier {

// Fourier coefficients psi(n) = int_0^1 |h(alpha)|^e e(-n alpha) dalpha on a
// truncated index range, extracted by a length-M transform of the sampled
// integrand.  Only n >= 0 is stored; psi(-n) = psi(n) holds by construction
// (the integrand is real and even).
struct PsiTable {
    i64 P = 0, R = 0, M = 0;
    double exponent = 7.0;
    i64 nmax = 0;
    std::vector<double> values;      // psi(n) for n = 0..nmax
    double aliasing_estimate = 0.0;  // |psi(0) at M - psi(0) at M/2|

    double psi(i64 n) const;  // throws truncation_error outside |n| <= nmax
    double psi0() const { return values[0]; }
};

PsiTable psi_table(const weylsum::WeylGrid& grid, i64 nmax, double exponent = 7.0);

// psi_l(m) = psi(m/l) when l | m, else 0
double psi_dilate(const PsiTable& table, i64 l, i64 m);

// sum over |n| <= nmax, |psi(n)| > floor_value of |psi(n)|^3
double cubic_moment(const PsiTable& table, double floor_value = 1.0);

// dyadic shell: sum over |n| <= nmax with T < |psi(n)| <= 2T of |psi(n)|^3
double dyadic_MT(const PsiTable& table, double T);

// calibration constant max |psi(n)| n^2 / P^15 over the dyadic range n >= 2P^4
double decay_constant(const PsiTable& table);

// tail estimate sum_{|n| > nmax} (C P^15 / n^2)^3 for a calibrated C
double cubic_tail_bound(const PsiTable& table, double C);

enum class Region { FullSquare, Major2D, Minor2D, AlphaMajor1D, AlphaMinor1D };

struct FormExponent {
    i64 c = 1, d = 0;
    double e = 7.0;
};

struct CorrelationSpec {
    std::vector<FormExponent> forms;
    Region region = Region::FullSquare;
};

// 2D trapezoid value of iint_region prod_j |h_j(c_j alpha + d_j beta)|^{e_j}
// on the common M x M grid, via index arithmetic (c_j i + d_j k mod M).
// grids supplies one WeylGrid per form, or a single shared grid.
double multi_form_correlation(const CorrelationSpec& spec,
                              const std::vector<const weylsum::WeylGrid*>& grids,
                              const circle::DissectionParams& dis);

struct IdentityReport {
    double lhs_quadrature = 0.0;  // 2D grid value of I(a,b,c,d)
    double rhs_psi_sum = 0.0;     // sum_n psi_a(cn) psi_b(dn) psi(n)
    double abs_residual = 0.0;
    double rel_residual = 0.0;
    double aliasing_estimate = 0.0;
    i64 nmax = 0, M = 0;
};

// Both sides of I(a,b,c,d) = sum_n psi_a(cn) psi_b(dn) psi(n), computed by
// two independent pipelines (2D quadrature vs dilated psi sum).
IdentityReport verify_correlation_identity(i64 a, i64 b, i64 c, i64 d, const SmoothParams& params,
                                       i64 M);

namespace serial {
double multi_form_correlation(const CorrelationSpec& spec,
                              const std::vector<const weylsum::WeylGrid*>& grids,
                              const circle::DissectionParams& dis);
}

}  // namespace qpl::fourier
