// local.cpp
//
// Local solubility of the pair.
//
// Real place: after normalizing the frame to a_2 = b_1 = 0 the two pivot
// coordinates decouple, so each attempt fixes theta_3..theta_s at random
// values in (0,1) and Newton-solves the two quartic equations
// a_1 x_1^4 = -sum a_i theta_i^4 and b_2 x_2^4 = -sum b_i theta_i^4.
//
// p-adic places: solubility by certificate search (solve the 2x2 system for
// the pivot fourth powers mod p^(2 tau + 1), look up fourth roots, check the
// minor valuation tau; such a solution lifts by the quantitative Hensel
// criterion).  Insolubility by descent: if the count of primitive solutions
// mod p^k vanishes, no nonzero p-adic solution exists at all.  The counts
// come from the congruence oracle, with
//   #(all-divisible solutions mod p^k) = p^{(k-1)s}           (k <= 4)
//                                      = p^{3s} M(p^{k-4})     (k > 4).

#include "qpl/local.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "qpl/arith.hpp"
#include "qpl/forms.hpp"

namespace qpl::local {

namespace {

bool is_prime(i64 p) {
    if (p < 2) return false;
    for (i64 d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

i64 vp(i64 n, i64 p) {  // valuation; -1 encodes infinity (n == 0)
    if (n == 0) return -1;
    if (n < 0) n = -n;
    i64 v = 0;
    while (n % p == 0) { n /= p; ++v; }
    return v;
}

u64 pow_mod(u64 base, u64 exp, u64 m) {
    u64 r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = static_cast<u64>((static_cast<u128>(r) * base) % m);
        base = static_cast<u64>((static_cast<u128>(base) * base) % m);
        exp >>= 1;
    }
    return r;
}

i64 mod_pos(i64 x, i64 m) {
    i64 r = x % m;
    return r < 0 ? r + m : r;
}

// inverse of a mod m when gcd(a,m)=1, else -1
i64 inv_mod(i64 a, i64 m) {
    i64 g = m, x = 0, x1 = 1, a1 = mod_pos(a, m);
    while (a1) {
        const i64 q = g / a1;
        g -= q * a1;
        std::swap(g, a1);
        x -= q * x1;
        std::swap(x, x1);
    }
    if (g != 1) return -1;
    return mod_pos(x, m);
}

double newton_quartic_root(double c, double x0) {
    // solve x^4 = c, c > 0
    double x = x0 > 0 ? x0 : 0.5;
    for (int it = 0; it < 60; ++it) {
        const double f = x * x * x * x - c;
        if (std::abs(f) <= 1e-15 * (1.0 + c)) break;
        x -= f / (4.0 * x * x * x);
        if (!(x > 0)) x = 0.5 * x0 + 1e-3;
    }
    return x;
}

struct PivotPair {
    i64 i, j;
    i64 det;
};

std::vector<PivotPair> pivot_pairs(const QuarticPairSystem& system) {
    std::vector<PivotPair> out;
    for (i64 i = 0; i < system.s(); ++i)
        for (i64 j = i + 1; j < system.s(); ++j) {
            const i64 det = system.a(i) * system.b(j) - system.a(j) * system.b(i);
            if (det != 0) out.push_back({i, j, det});
        }
    return out;
}

}  // namespace

std::optional<RealSolution> real_nonsingular_solution(const QuarticPairSystem& system,
                                                      i64 attempts, u64 seed) {
    system.require_valid();
    const i64 s = system.s();
    const auto pivots = pivot_pairs(system);
    if (pivots.empty() || s < 2) return std::nullopt;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.05, 0.95);
    double coeff_scale = 0.0;
    for (i64 j = 0; j < s; ++j)
        coeff_scale += std::abs(static_cast<double>(system.a(j))) +
                       std::abs(static_cast<double>(system.b(j)));

    for (i64 attempt = 0; attempt < attempts; ++attempt) {
        const auto& pv = pivots[static_cast<std::size_t>(attempt) % pivots.size()];
        forms::NormalizedFrame frame;
        try {
            frame = forms::normalize_frame(system, pv.i, pv.j);
        } catch (const config_error&) {
            continue;
        }
        const auto& ns = frame.system;

        std::vector<double> th(static_cast<std::size_t>(s), 0.0);
        double t1 = 0.0, t2 = 0.0;  // -(sum over the fixed coordinates)
        for (i64 k = 2; k < s; ++k) {
            const double v = unif(rng);
            th[static_cast<std::size_t>(k)] = v;
            const double f = v * v * v * v;
            t1 -= static_cast<double>(ns.a(k)) * f;
            t2 -= static_cast<double>(ns.b(k)) * f;
        }
        const double c1 = t1 / static_cast<double>(ns.a(0));
        const double c2 = t2 / static_cast<double>(ns.b(1));
        if (!(c1 > 0.0) || !(c2 > 0.0)) continue;
        const double x1 = newton_quartic_root(c1, std::pow(c1, 0.25) * 1.05);
        const double x2 = newton_quartic_root(c2, std::pow(c2, 0.25) * 1.05);
        if (!(x1 > 0.0 && x1 < 1.0 && x2 > 0.0 && x2 < 1.0)) continue;
        th[0] = x1;
        th[1] = x2;

        // map back to the original variable order and re-verify there
        RealSolution sol;
        sol.theta.assign(static_cast<std::size_t>(s), 0.0);
        for (i64 pos = 0; pos < s; ++pos)
            sol.theta[static_cast<std::size_t>(frame.variable_order[static_cast<std::size_t>(
                pos)])] = th[static_cast<std::size_t>(pos)];

        double r1 = 0.0, r2 = 0.0;
        for (i64 k = 0; k < s; ++k) {
            const double f = std::pow(sol.theta[static_cast<std::size_t>(k)], 4.0);
            r1 += static_cast<double>(system.a(k)) * f;
            r2 += static_cast<double>(system.b(k)) * f;
        }
        sol.residual1 = std::abs(r1);
        sol.residual2 = std::abs(r2);
        const double ti3 = std::pow(sol.theta[static_cast<std::size_t>(pv.i)], 3.0);
        const double tj3 = std::pow(sol.theta[static_cast<std::size_t>(pv.j)], 3.0);
        sol.jacobian_minor = 16.0 * static_cast<double>(pv.det) * ti3 * tj3;
        sol.pivot_i = pv.i;
        sol.pivot_j = pv.j;

        if (sol.residual1 <= 1e-10 * coeff_scale && sol.residual2 <= 1e-10 * coeff_scale &&
            std::abs(sol.jacobian_minor) > 1e-8)
            return sol;
    }
    return std::nullopt;
}

namespace {

// count of solutions x in [0, p^k)^s of both congruences mod p^k that are
// primitive (not all coordinates divisible by p); u128 to absorb p^{3s}
bool primitive_count_is_zero(const QuarticPairSystem& system, i64 p, i64 k, bool& feasible) {
    i64 q = 1;
    for (i64 t = 0; t < k; ++t) {
        if (q > 2048 / p) { feasible = false; return false; }
        q *= p;
    }
    feasible = true;
    u64 total;
    try {
        total = arith::congruence_count_M(q, system);
    } catch (const guard_error&) {
        feasible = false;
        return false;
    }
    const i64 s = system.s();
    u128 divisible = 0;
    if (k <= 4) {
        // x = p y, y free mod p^{k-1}
        divisible = 1;
        for (i64 t = 0; t < (k - 1) * s; ++t) {
            divisible *= static_cast<u128>(p);
            if (divisible > (u128(1) << 120)) { feasible = false; return false; }
        }
    } else {
        u64 inner;
        try {
            inner = arith::congruence_count_M(q / (p * p * p * p), system);
        } catch (const guard_error&) {
            feasible = false;
            return false;
        }
        divisible = static_cast<u128>(inner);
        for (i64 t = 0; t < 3 * s; ++t) {
            divisible *= static_cast<u128>(p);
            if (divisible > (u128(1) << 120)) { feasible = false; return false; }
        }
    }
    if (static_cast<u128>(total) < divisible)
        throw invariant_error("local: primitive count came out negative");
    return static_cast<u128>(total) == divisible;
}

struct RootTable {
    std::vector<std::vector<i64>> roots;  // roots[u] = {x : x^4 == u mod m}
    std::vector<i64> values;              // distinct fourth-power residues
};

RootTable fourth_root_table(i64 m) {
    RootTable rt;
    rt.roots.resize(static_cast<std::size_t>(m));
    for (i64 x = 0; x < m; ++x)
        rt.roots[static_cast<std::size_t>(pow_mod(static_cast<u64>(x), 4,
                                                  static_cast<u64>(m)))]
            .push_back(x);
    for (i64 u = 0; u < m; ++u)
        if (!rt.roots[static_cast<std::size_t>(u)].empty()) rt.values.push_back(u);
    return rt;
}

struct CertCandidate {
    std::vector<i64> x;
    i64 tau;
};

// exact valuation of the pivot minor 16 * det * x_i^3 * x_j^3; -1 = infinite
i64 minor_valuation(i64 p, i64 det, i64 xi, i64 xj) {
    if (xi == 0 || xj == 0) return -1;
    return vp(16, p) + vp(det, p) + 3 * vp(xi, p) + 3 * vp(xj, p);
}

std::optional<CertCandidate> search_certificate(const QuarticPairSystem& system, i64 p, i64 tau,
                                                i64 trials, u64 seed) {
    const i64 s = system.s();
    if (s < 2) return std::nullopt;
    i64 m = 1;
    for (i64 t = 0; t < 2 * tau + 1; ++t) {
        if (m > 1000000 / p) return std::nullopt;  // modulus cap for the root table
        m *= p;
    }

    const auto pivots = pivot_pairs(system);
    if (pivots.empty()) return std::nullopt;
    // prefer pivot blocks whose determinant is a p-adic unit
    std::vector<PivotPair> ordered(pivots);
    std::stable_sort(ordered.begin(), ordered.end(),
                     [&](const PivotPair& x, const PivotPair& y) {
                         return vp(x.det, p) < vp(y.det, p);
                     });

    const auto rt = fourth_root_table(m);
    std::mt19937_64 rng(seed);

    const i64 V = static_cast<i64>(rt.values.size());
    for (const auto& pv : ordered) {
        const i64 Dinv = inv_mod(pv.det, m);
        const bool unit_det = Dinv >= 0;
        if (!unit_det && V * V > 250000) continue;  // value-pair sweep too costly

        const i64 pivot_trials = (s == 2) ? 1 : trials;  // no free coordinates when s = 2
        for (i64 trial = 0; trial < pivot_trials; ++trial) {
            std::vector<i64> x(static_cast<std::size_t>(s), 0);
            i64 t1 = 0, t2 = 0;
            for (i64 k = 0; k < s; ++k) {
                if (k == pv.i || k == pv.j) continue;
                const i64 xv = static_cast<i64>(rng() % static_cast<u64>(m));
                x[static_cast<std::size_t>(k)] = xv;
                const i64 f = static_cast<i64>(pow_mod(static_cast<u64>(xv), 4,
                                                       static_cast<u64>(m)));
                t1 = mod_pos(t1 - system.a(k) * f, m);
                t2 = mod_pos(t2 - system.b(k) * f, m);
            }

            if (unit_det) {
                // Cramer mod m: u = (b_j t1 - a_j t2)/D, w = (a_i t2 - b_i t1)/D
                const i64 u = mod_pos(Dinv * mod_pos(system.b(pv.j) * t1 - system.a(pv.j) * t2, m),
                                      m);
                const i64 w = mod_pos(Dinv * mod_pos(system.a(pv.i) * t2 - system.b(pv.i) * t1, m),
                                      m);
                for (i64 xi : rt.roots[static_cast<std::size_t>(u)]) {
                    for (i64 xj : rt.roots[static_cast<std::size_t>(w)]) {
                        const i64 v = minor_valuation(p, pv.det, xi, xj);
                        if (v < 0 || v > tau) continue;
                        x[static_cast<std::size_t>(pv.i)] = xi;
                        x[static_cast<std::size_t>(pv.j)] = xj;
                        return CertCandidate{x, v};
                    }
                }
            } else {
                // sweep distinct fourth-power value pairs, then roots
                for (i64 u : rt.values) {
                    for (i64 w : rt.values) {
                        const i64 l1 = mod_pos(system.a(pv.i) * u + system.a(pv.j) * w - t1, m);
                        if (l1) continue;
                        const i64 l2 = mod_pos(system.b(pv.i) * u + system.b(pv.j) * w - t2, m);
                        if (l2) continue;
                        for (i64 xi : rt.roots[static_cast<std::size_t>(u)]) {
                            for (i64 xj : rt.roots[static_cast<std::size_t>(w)]) {
                                const i64 v = minor_valuation(p, pv.det, xi, xj);
                                if (v < 0 || v > tau) continue;
                                x[static_cast<std::size_t>(pv.i)] = xi;
                                x[static_cast<std::size_t>(pv.j)] = xj;
                                return CertCandidate{x, v};
                            }
                        }
                    }
                }
            }
        }
        if (s == 2) break;  // no randomness beyond the pivots
    }
    return std::nullopt;
}

}  // namespace

LocalVerdict padic_nonsingular(const QuarticPairSystem& system, i64 p, i64 depth) {
    system.require_valid();
    if (!is_prime(p)) throw config_error("padic_nonsingular: p must be prime");
    if (depth < 1) throw config_error("padic_nonsingular: depth must be >= 1");

    LocalVerdict v;
    v.p = p;

    if (p > 73 && system.s() >= 21 && forms::rank_condition(system).pass) {
        v.status = Status::Assumed;
        v.note = "p > 73 with s >= 21: solubility assumed without search";
        return v;
    }

    const i64 tau_max = (p == 2) ? 4 : 2;
    for (i64 tau = 0; tau <= tau_max; ++tau) {
        if (2 * tau + 1 > depth) break;
        const auto cand = search_certificate(system, p, tau, /*trials=*/64,
                                             /*seed=*/0x9e3779b97f4a7c15ULL ^ static_cast<u64>(p));
        if (!cand) continue;
        v.status = Status::Soluble;
        v.tau = cand->tau;
        i64 m = 1;
        for (i64 t = 0; t < 2 * cand->tau + 1; ++t) m *= p;
        v.modulus = m;
        v.witness = cand->x;
        for (auto& xi : v.witness) xi = mod_pos(xi, m);
        // record the pivot pair that certifies the minor
        for (const auto& pv : pivot_pairs(system)) {
            if (minor_valuation(p, pv.det, v.witness[static_cast<std::size_t>(pv.i)],
                                v.witness[static_cast<std::size_t>(pv.j)]) == cand->tau) {
                v.pivot_i = pv.i;
                v.pivot_j = pv.j;
                break;
            }
        }
        v.note = "certificate mod p^" + std::to_string(2 * cand->tau + 1);
        if (!verify_padic_certificate(system, v))
            throw invariant_error("padic_nonsingular: certificate failed re-verification");
        return v;
    }

    // no certificate found: descent scan, since a vanishing primitive-solution
    // count mod p^k proves insolubility outright
    for (i64 k = 1; k <= depth; ++k) {
        bool feasible = false;
        if (primitive_count_is_zero(system, p, k, feasible)) {
            v.status = Status::Insoluble;
            v.note = "no primitive solutions mod p^" + std::to_string(k);
            v.modulus = static_cast<i64>(std::llround(std::pow(p, k)));
            return v;
        }
        if (!feasible) break;
    }

    v.status = Status::Unknown;
    v.note = "depth budget exhausted";
    return v;
}

bool verify_padic_certificate(const QuarticPairSystem& system, const LocalVerdict& v) {
    if (v.status != Status::Soluble || v.tau < 0 || v.modulus <= 0) return false;
    if (static_cast<i64>(v.witness.size()) != system.s()) return false;
    if (v.pivot_i < 0 || v.pivot_j < 0) return false;
    const i64 m = v.modulus;
    i64 check = 1;
    for (i64 t = 0; t < 2 * v.tau + 1; ++t) check *= v.p;
    if (check != m) return false;

    i64 l1 = 0, l2 = 0;
    for (i64 k = 0; k < system.s(); ++k) {
        const i64 f = static_cast<i64>(pow_mod(static_cast<u64>(mod_pos(v.witness[
                                                   static_cast<std::size_t>(k)], m)),
                                               4, static_cast<u64>(m)));
        l1 = mod_pos(l1 + system.a(k) * f, m);
        l2 = mod_pos(l2 + system.b(k) * f, m);
    }
    if (l1 != 0 || l2 != 0) return false;

    const i64 det = system.a(v.pivot_i) * system.b(v.pivot_j) -
                    system.a(v.pivot_j) * system.b(v.pivot_i);
    return minor_valuation(v.p, det, v.witness[static_cast<std::size_t>(v.pivot_i)],
                           v.witness[static_cast<std::size_t>(v.pivot_j)]) == v.tau;
}

SolubilityReport local_solubility_report(const QuarticPairSystem& system, i64 depth, i64 attempts,
                                         u64 seed) {
    SolubilityReport rep;
    rep.real = real_nonsingular_solution(system, attempts, seed);

    static const i64 kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31,
                                  37, 41, 43, 47, 53, 59, 61, 67, 71, 73};
    bool any_insoluble = false, any_unknown = false;
    for (i64 p : kPrimes) {
        rep.primes.push_back(padic_nonsingular(system, p, depth));
        if (rep.primes.back().status == Status::Insoluble) any_insoluble = true;
        if (rep.primes.back().status == Status::Unknown) any_unknown = true;
    }
    if (system.s() >= 21 && forms::rank_condition(system).pass)
        rep.assumed_note = "p > 73: soluble by assumption (s >= 21, rank condition holds)";
    else
        rep.assumed_note = "p > 73: not covered (needs s >= 21 and the rank condition)";

    if (any_insoluble)
        rep.overall = SolubilityReport::Overall::Violated;
    else if (any_unknown || !rep.real || rep.assumed_note.find("not covered") != std::string::npos)
        rep.overall = SolubilityReport::Overall::Unknown;
    else
        rep.overall = SolubilityReport::Overall::Satisfied;
    return rep;
}

}  // namespace qpl::local
