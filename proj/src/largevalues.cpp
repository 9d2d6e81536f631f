// largevalues.cpp
//
// Large-value sets of Fourier coefficients, the signed kernel
// K(alpha) = sum_{n in Z} omega_n e(-n alpha), the identity
// int |h|^7 K = sum_Z |psi| > T Z, and the mixed moment int |h^4 K^2| with
// its bound terms.

#include "qpl/largevalues.hpp"

#include <algorithm>
#include <cmath>

#include "qpl/arith.hpp"
#include "qpl/parallel.hpp"

namespace qpl::largevalues {

LargeValueSet build_Z(const fourier::PsiTable& table, double T) {
    if (!(T > 0)) throw config_error("build_Z: T must be positive");
    LargeValueSet set;
    set.T = T;
    set.nmax = table.nmax;
    for (i64 n = -table.nmax; n <= table.nmax; ++n) {
        const double v = table.psi(n);
        const double a = std::abs(v);
        if (a > T && a <= 2.0 * T) {
            set.indices.push_back(n);
            set.signs.push_back(v > 0 ? 1 : -1);  // psi(n) = 0 never enters (strict shell)
        }
    }
    set.Z = static_cast<i64>(set.indices.size());
    return set;
}

KernelGrid K_grid(const LargeValueSet& set, i64 M) {
    if (set.nmax >= M / 2) throw guard_error("K_grid: nmax >= M/2 aliases the kernel");
    const auto root = arith::unit_roots(M);
    const u64 mask = static_cast<u64>(M) - 1;
    if ((static_cast<u64>(M) & mask) != 0)
        throw config_error("K_grid: M must be a power of two");

    KernelGrid K;
    K.M = M;
    K.values.resize(static_cast<std::size_t>(M));

    // residues of -n mod M, one per member of Z
    std::vector<u64> neg_res(set.indices.size());
    for (std::size_t t = 0; t < set.indices.size(); ++t) {
        const i64 r = ((-set.indices[t]) % M + M) % M;
        neg_res[t] = static_cast<u64>(r);
    }

    double max_im = 0.0;
#pragma omp parallel for schedule(static) reduction(max : max_im)
    for (i64 j = 0; j < M; ++j) {
        std::complex<double> acc = 0.0;
        for (std::size_t t = 0; t < neg_res.size(); ++t)
            acc += static_cast<double>(set.signs[t]) * root[(neg_res[t] * static_cast<u64>(j)) & mask];
        K.values[static_cast<std::size_t>(j)] = acc.real();
        max_im = std::max(max_im, std::abs(acc.imag()));
    }
    K.max_imag = max_im;
    return K;
}

KernelIdentityReport verify_kernel_identity(const weylsum::WeylGrid& hgrid, const LargeValueSet& set,
                           const KernelGrid& K, const fourier::PsiTable& table) {
    if (hgrid.M != K.M) throw config_error("verify_kernel_identity: grids must share M");
    KernelIdentityReport rep;
    rep.integral_h7K = det_sum(K.M, [&](i64 j) {
        const double h2 = std::norm(hgrid.values[static_cast<std::size_t>(j)]);
        const double h7 = std::pow(h2, 3.5);
        return h7 * K.values[static_cast<std::size_t>(j)];
    }) / static_cast<double>(K.M);
    long double s = 0.0L;
    for (i64 n : set.indices) s += std::abs(table.psi(n));
    rep.sum_abs_psi = static_cast<double>(s);
    rep.TZ = set.T * static_cast<double>(set.Z);
    rep.rel_residual = std::abs(rep.integral_h7K - rep.sum_abs_psi) /
                       std::max(std::abs(rep.sum_abs_psi), 1e-300);
    rep.strict_gt = set.Z == 0 || rep.integral_h7K > rep.TZ;
    return rep;
}

MixedMomentReport mixed_moment_h4K2(const weylsum::WeylGrid& hgrid, const KernelGrid& K,
                                    const LargeValueSet& set) {
    if (hgrid.M != K.M) throw config_error("mixed_moment: grids must share M");
    MixedMomentReport rep;
    rep.value = det_sum(K.M, [&](i64 j) {
        const double h2 = std::norm(hgrid.values[static_cast<std::size_t>(j)]);
        const double kv = K.values[static_cast<std::size_t>(j)];
        return h2 * h2 * kv * kv;
    }) / static_cast<double>(K.M);
    const double P = static_cast<double>(hgrid.params.P);
    const double Z = static_cast<double>(set.Z);
    rep.bound_P3Z = P * P * P * Z;
    rep.bound_P2Z32 = P * P * Z * std::sqrt(Z);
    const double denom = rep.bound_P3Z + rep.bound_P2Z32;
    rep.ratio = denom > 0 ? rep.value / denom : 0.0;
    return rep;
}

LargeValueBounds large_value_bounds(double Z, double T, double P, const AdmissibleExponents& exps) {
    if (!(T > 0) || !(P > 0)) throw config_error("large_value_bounds: T and P must be positive");
    (void)Z;
    const double d10 = exps.delta10;
    LargeValueBounds out;
    out.B1 = std::pow(P, 28.0 / 3.0 + d10 / 3.0) / (T * T) +
             std::pow(P, 13.0 + 0.5 * d10) / (T * T * T);
    out.B2 = std::pow(P, 9.0 + d10) / (T * T) + std::pow(P, 16.0 + 2.0 * d10) / (T * T * T * T);
    const double split = std::pow(P, 3.0 + 1.5 * d10);
    out.low_T_regime = T <= split;
    out.boundary = T == split;
    return out;
}

}  // namespace qpl::largevalues
