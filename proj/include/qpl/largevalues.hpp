#pragma once

#include <vector>

#include "qpl/fourier.hpp"
#include "qpl/types.hpp"
#include "qpl/weylsum.hpp"

namespace qpl::largevalues {

// The dyadic large-value set Z = { n : T < |psi(n)| <= 2T, |n| <= nmax } with
// signs omega_n = sign(psi(n)).  Symmetric: n in Z iff -n in Z.
struct LargeValueSet {
    double T = 0.0;
    std::vector<i64> indices;  // sorted ascending, signed
    std::vector<int> signs;    // aligned, +1/-1
    i64 Z = 0;

    i64 nmax = 0;  // inherited from the source table
};

LargeValueSet build_Z(const fourier::PsiTable& table, double T);

struct KernelGrid {
    std::vector<double> values;  // K(j/M), real part
    double max_imag = 0.0;       // largest |Im| seen on the grid
    i64 M = 0;
};

// K(alpha) = sum_{n in Z} omega_n e(-n alpha) sampled on the M-grid
KernelGrid K_grid(const LargeValueSet& set, i64 M);

struct KernelIdentityReport {
    double integral_h7K = 0.0;  // int |h|^7 K
    double sum_abs_psi = 0.0;   // sum_{n in Z} |psi(n)|
    double TZ = 0.0;
    double rel_residual = 0.0;
    bool strict_gt = false;  // integral exceeds T Z (vacuous when Z = 0)
};

// Checks int |h|^7 K = sum_Z |psi| and the strict inequality > T Z.
KernelIdentityReport verify_kernel_identity(const weylsum::WeylGrid& hgrid, const LargeValueSet& set,
                           const KernelGrid& K, const fourier::PsiTable& table);

struct MixedMomentReport {
    double value = 0.0;       // int |h^4 K^2|
    double bound_P3Z = 0.0;   // P^3 Z
    double bound_P2Z32 = 0.0; // P^2 Z^{3/2}
    double ratio = 0.0;       // value / (P^3 Z + P^2 Z^{3/2}), 0 when Z = 0
};

MixedMomentReport mixed_moment_h4K2(const weylsum::WeylGrid& hgrid, const KernelGrid& K,
                                    const LargeValueSet& set);

struct LargeValueBounds {
    double B1 = 0.0;  // P^{28/3 + D10/3} T^-2 + P^{13 + D10/2} T^-3
    double B2 = 0.0;  // P^{9 + D10} T^-2 + P^{16 + 2 D10} T^-4
    bool low_T_regime = false;   // T <= P^{3 + 3 D10/2}
    bool boundary = false;       // T equals the split point
};

LargeValueBounds large_value_bounds(double Z, double T, double P, const AdmissibleExponents& exps);

}  // namespace qpl::largevalues
