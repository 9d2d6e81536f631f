// arith.cpp
//
// Integer-arithmetic substrate: smooth sets, the multiplicative function
// kappa, complete quartic Gauss sums, and exact congruence-count oracles.
//
// The congruence counters never nest s loops: they fold one variable at a
// time into a residue histogram over (Z/q)^2, so q <= 10^3 with s <= 24
// stays feasible.  Counts are uint64 with checked adds.

#include "qpl/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qpl/parallel.hpp"

namespace qpl::arith {

namespace {

inline i64 mod_nonneg(i64 x, i64 q) {
    i64 r = x % q;
    return r < 0 ? r + q : r;
}

inline u64 pow4_mod(u64 x, u64 q) {
    u64 x2 = static_cast<u64>((static_cast<u128>(x) * x) % q);
    return static_cast<u64>((static_cast<u128>(x2) * x2) % q);
}

inline void checked_add(u64& acc, u64 v) {
    if (__builtin_add_overflow(acc, v, &acc))
        throw guard_error("arith: 64-bit count overflow");
}

inline u64 checked_mul(u64 a, u64 b) {
    u64 r;
    if (__builtin_mul_overflow(a, b, &r))
        throw guard_error("arith: 64-bit count overflow in multiply");
    return r;
}

}  // namespace

std::vector<i64> smooth_set(const SmoothParams& params) {
    params.validate();
    const i64 P = params.P, R = params.R;
    std::vector<i64> out;
    if (R >= P) {
        out.resize(static_cast<std::size_t>(P));
        for (i64 n = 1; n <= P; ++n) out[static_cast<std::size_t>(n - 1)] = n;
        return out;
    }
    // smallest-prime-factor sieve up to P, then walk factors
    std::vector<i64> spf(static_cast<std::size_t>(P + 1), 0);
    for (i64 i = 2; i <= P; ++i) {
        if (spf[static_cast<std::size_t>(i)] == 0) {
            for (i64 j = i; j <= P; j += i)
                if (spf[static_cast<std::size_t>(j)] == 0) spf[static_cast<std::size_t>(j)] = i;
        }
    }
    out.push_back(1);
    for (i64 n = 2; n <= P; ++n) {
        i64 m = n;
        bool ok = true;
        while (m > 1) {
            i64 p = spf[static_cast<std::size_t>(m)];
            if (p > R) { ok = false; break; }
            while (m % p == 0) m /= p;
        }
        if (ok) out.push_back(n);
    }
    return out;
}

double kappa(i64 q) {
    if (q < 1) throw config_error("kappa: q must be >= 1");
    double result = 1.0;
    i64 m = q;
    for (i64 p = 2; p * p <= m; ++p) {
        if (m % p != 0) continue;
        i64 e = 0;
        while (m % p == 0) { m /= p; ++e; }
        const i64 l = e / 4;
        const double pl = std::pow(static_cast<double>(p), static_cast<double>(l));
        switch (e % 4) {
            case 0: result /= pl; break;
            case 1: result *= 4.0 / (pl * std::sqrt(static_cast<double>(p))); break;
            default: result /= pl * static_cast<double>(p); break;  // 4l+2, 4l+3
        }
    }
    if (m > 1) result *= 4.0 / std::sqrt(static_cast<double>(m));  // leftover prime, e = 1
    return result;
}

std::vector<std::complex<double>> unit_roots(i64 q) {
    std::vector<std::complex<double>> root(static_cast<std::size_t>(q));
    const double w = 2.0 * std::numbers::pi / static_cast<double>(q);
    for (i64 k = 0; k <= q / 2; ++k)
        root[static_cast<std::size_t>(k)] = {std::cos(w * static_cast<double>(k)),
                                             std::sin(w * static_cast<double>(k))};
    // pin e(1/2) = -1 exactly; the self-mirrored entry must have imag 0
    if (q % 2 == 0) root[static_cast<std::size_t>(q / 2)] = {-1.0, 0.0};
    // mirror so that root[q-k] == conj(root[k]) holds bitwise
    for (i64 k = q / 2 + 1; k < q; ++k)
        root[static_cast<std::size_t>(k)] = std::conj(root[static_cast<std::size_t>(q - k)]);
    return root;
}

std::complex<double> gauss_sum(i64 q, i64 a) {
    if (q < 1) throw config_error("gauss_sum: q must be >= 1");
    const u64 uq = static_cast<u64>(q);
    const u64 ua = static_cast<u64>(mod_nonneg(a, q));
    const auto root = unit_roots(q);
    std::complex<double> sum = 0.0;
    for (u64 r = 1; r <= uq; ++r) {
        const u64 idx = static_cast<u64>((static_cast<u128>(ua) * pow4_mod(r, uq)) % uq);
        sum += root[idx];
    }
    return sum;
}

std::vector<u64> fourth_power_residue_counts(i64 q) {
    if (q < 1) throw config_error("fourth_power_residue_counts: q must be >= 1");
    std::vector<u64> d(static_cast<std::size_t>(q), 0);
    for (u64 x = 1; x <= static_cast<u64>(q); ++x)
        d[pow4_mod(x, static_cast<u64>(q))] += 1;
    return d;
}

std::vector<std::complex<double>> gauss_sum_table(i64 q) {
    // S(q,c) = sum_t d[t] e(ct/q) over the fourth-power support; O(q * |support|)
    const auto d = fourth_power_residue_counts(q);
    const auto root = unit_roots(q);
    std::vector<std::pair<u64, u64>> support;
    for (i64 t = 0; t < q; ++t)
        if (d[static_cast<std::size_t>(t)])
            support.emplace_back(static_cast<u64>(t), d[static_cast<std::size_t>(t)]);
    std::vector<std::complex<double>> table(static_cast<std::size_t>(q));
    for (i64 c = 0; c < q; ++c) {
        std::complex<double> sum = 0.0;
        for (const auto& [t, mult] : support)
            sum += static_cast<double>(mult) *
                   root[static_cast<std::size_t>((static_cast<u128>(c) * t) % static_cast<u64>(q))];
        table[static_cast<std::size_t>(c)] = sum;
    }
    return table;
}

u64 congruence_count_rho(i64 q) {
    if (q < 1) throw config_error("rho: q must be >= 1");
    if (q > 1000000) throw guard_error("rho: q exceeds the 10^6 histogram guard");
    const auto d = fourth_power_residue_counts(q);
    std::vector<std::pair<i64, u64>> support;
    for (i64 t = 0; t < q; ++t)
        if (d[static_cast<std::size_t>(t)]) support.emplace_back(t, d[static_cast<std::size_t>(t)]);
    // c = d (*) d cyclically over the nonzero support
    std::vector<u64> c(static_cast<std::size_t>(q), 0);
    for (const auto& [t1, m1] : support)
        for (const auto& [t2, m2] : support) {
            i64 m = t1 + t2;
            if (m >= q) m -= q;
            checked_add(c[static_cast<std::size_t>(m)], checked_mul(m1, m2));
        }
    u128 total = 0;
    for (i64 m = 0; m < q; ++m)
        total += static_cast<u128>(c[static_cast<std::size_t>(m)]) * c[static_cast<std::size_t>(m)];
    if (total > static_cast<u128>(UINT64_MAX))
        throw guard_error("rho: count exceeds 64 bits");
    return static_cast<u64>(total);
}

u64 congruence_count_M(i64 q, const QuarticPairSystem& system) {
    if (q < 1) throw config_error("M: q must be >= 1");
    system.require_valid();
    const i64 s = system.s();
    if (q > 2048) throw guard_error("M: q exceeds the (Z/q)^2 histogram guard (2048)");
    if (static_cast<u128>(q) * q > (u128(1) << 33))
        throw guard_error("M: histogram would exceed the cell budget");

    const auto d = fourth_power_residue_counts(q);
    std::vector<std::pair<i64, u64>> support;
    for (i64 t = 0; t < q; ++t)
        if (d[static_cast<std::size_t>(t)]) support.emplace_back(t, d[static_cast<std::size_t>(t)]);

    const std::size_t cells = static_cast<std::size_t>(q) * static_cast<std::size_t>(q);
    std::vector<u64> state(cells, 0), next(cells, 0);
    state[0] = 1;  // empty prefix: (0,0) with multiplicity 1

    for (i64 j = 0; j < s; ++j) {
        const i64 aj = mod_nonneg(system.a(j), q);
        const i64 bj = mod_nonneg(system.b(j), q);
        std::fill(next.begin(), next.end(), 0);
        bool overflow = false;
#pragma omp parallel for schedule(static) reduction(||: overflow)
        for (i64 u = 0; u < q; ++u) {
            u64* out_row = next.data() + static_cast<std::size_t>(u) * static_cast<std::size_t>(q);
            for (const auto& [t, mult] : support) {
                const i64 su = mod_nonneg(u - aj * t, q);
                const i64 shift = mod_nonneg(bj * t, q);
                const u64* in_row =
                    state.data() + static_cast<std::size_t>(su) * static_cast<std::size_t>(q);
                for (i64 v = 0; v < q; ++v) {
                    i64 sv = v - shift;
                    if (sv < 0) sv += q;
                    u64 add;
                    if (__builtin_mul_overflow(mult, in_row[sv], &add) ||
                        __builtin_add_overflow(out_row[v], add, &out_row[v]))
                        overflow = true;
                }
            }
        }
        if (overflow) throw guard_error("M: 64-bit count overflow");
        state.swap(next);
    }
    return state[0];
}

namespace serial {

u64 congruence_count_rho(i64 q) {
    if (q < 1) throw config_error("rho(serial): q must be >= 1");
    if (q > 64) throw guard_error("rho(serial): quadruple loop limited to q <= 64");
    const u64 uq = static_cast<u64>(q);
    std::vector<u64> p4(static_cast<std::size_t>(q) + 1);
    for (u64 x = 1; x <= uq; ++x) p4[x] = pow4_mod(x, uq);
    u64 count = 0;
    for (u64 x1 = 1; x1 <= uq; ++x1)
        for (u64 x2 = 1; x2 <= uq; ++x2)
            for (u64 x3 = 1; x3 <= uq; ++x3)
                for (u64 x4 = 1; x4 <= uq; ++x4)
                    if ((p4[x1] + p4[x2]) % uq == (p4[x3] + p4[x4]) % uq) ++count;
    return count;
}

u64 congruence_count_M(i64 q, const QuarticPairSystem& system) {
    system.require_valid();
    const i64 s = system.s();
    double cost = 1.0;
    for (i64 j = 0; j < s; ++j) cost *= static_cast<double>(q);
    if (cost > 2e7) throw guard_error("M(serial): q^s enumeration budget exceeded");
    std::vector<u64> p4(static_cast<std::size_t>(q) + 1);
    for (u64 x = 1; x <= static_cast<u64>(q); ++x) p4[x] = pow4_mod(x, static_cast<u64>(q));
    std::vector<u64> x(static_cast<std::size_t>(s), 1);
    u64 count = 0;
    while (true) {
        i64 l1 = 0, l2 = 0;
        for (i64 j = 0; j < s; ++j) {
            const i64 t = static_cast<i64>(p4[x[static_cast<std::size_t>(j)]]);
            l1 = mod_nonneg(l1 + system.a(j) % q * t, q);
            l2 = mod_nonneg(l2 + system.b(j) % q * t, q);
        }
        if (l1 == 0 && l2 == 0) ++count;
        i64 j = 0;
        while (j < s && ++x[static_cast<std::size_t>(j)] > static_cast<u64>(q)) {
            x[static_cast<std::size_t>(j)] = 1;
            ++j;
        }
        if (j == s) break;
    }
    return count;
}

}  // namespace serial

}  // namespace qpl::arith
