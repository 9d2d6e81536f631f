// counter.cpp
//
// Exact N(P) by per-variable convolution over the 2D value lattice.  After
// folding variables 1..m the histogram holds, for every reachable pair
// (u,v), the number of prefixes with (L1 partial, L2 partial) = (u,v); the
// answer is the count at (0,0) after all s variables.  x and -x contribute
// the same fourth power, so x ranges over [0,P] with weight 2 for x != 0.
//
// Total mass is checked against (2P+1)^m after every fold.

#include "qpl/counter.hpp"

#include <algorithm>
#include <cstdlib>
#include <unordered_map>

namespace qpl::counter {

namespace {

struct ValueWeight {
    i64 f;   // x^4
    u64 wt;  // 1 for x = 0, else 2
};

std::vector<ValueWeight> fourth_power_weights(i64 P) {
    std::vector<ValueWeight> vw;
    vw.reserve(static_cast<std::size_t>(P) + 1);
    for (i64 x = 0; x <= P; ++x) vw.push_back({x * x * x * x, x == 0 ? u64{1} : u64{2}});
    return vw;
}

inline void checked_add(u64& acc, u64 v) {
    if (__builtin_add_overflow(acc, v, &acc)) throw guard_error("counter: 64-bit count overflow");
}

struct FoldPlan {
    std::vector<std::pair<i64, i64>> pairs;  // largest coefficients first
    i64 U1 = 0, U2 = 0;                      // final bounds sum |a| P^4, sum |b| P^4
    i64 P = 0;
};

FoldPlan make_plan(const QuarticPairSystem& system, i64 P) {
    system.require_valid();
    if (P < 0) throw config_error("counter: P must be >= 0");
    if (P > 1000) throw guard_error("counter: P exceeds the 1000 guard");
    FoldPlan plan;
    plan.P = P;
    plan.pairs = system.pairs;
    std::stable_sort(plan.pairs.begin(), plan.pairs.end(), [](const auto& x, const auto& y) {
        return std::max(std::llabs(x.first), std::llabs(x.second)) >
               std::max(std::llabs(y.first), std::llabs(y.second));
    });
    const i64 P4 = P * P * P * P;
    for (const auto& [a, b] : plan.pairs) {
        plan.U1 += std::llabs(a) * P4;
        plan.U2 += std::llabs(b) * P4;
    }
    return plan;
}

u64 fold_dense(const FoldPlan& plan, const std::vector<ValueWeight>& vw, bool parallel) {
    const i64 U1 = plan.U1, U2 = plan.U2;
    const i64 W1 = 2 * U1 + 1, W2 = 2 * U2 + 1;
    const std::size_t cells = static_cast<std::size_t>(W1) * static_cast<std::size_t>(W2);
    std::vector<u64> state(cells, 0), next(cells, 0);
    auto at = [&](std::vector<u64>& buf, i64 u, i64 v) -> u64& {
        return buf[static_cast<std::size_t>(u + U1) * static_cast<std::size_t>(W2) +
                   static_cast<std::size_t>(v + U2)];
    };
    at(state, 0, 0) = 1;

    // reachable window grows with the folded prefix
    i64 B1 = 0, B2 = 0;
    const i64 P4 = plan.P * plan.P * plan.P * plan.P;
    u128 expected_mass = 1;
    for (std::size_t m = 0; m < plan.pairs.size(); ++m) {
        const auto [a, b] = plan.pairs[m];
        const i64 nB1 = B1 + std::llabs(a) * P4;
        const i64 nB2 = B2 + std::llabs(b) * P4;
        bool overflow = false;
#pragma omp parallel for schedule(static) reduction(||: overflow) if (parallel)
        for (i64 u = -nB1; u <= nB1; ++u) {
            for (i64 v = -nB2; v <= nB2; ++v) {
                u64 acc = 0;
                for (const auto& [f, wt] : vw) {
                    const i64 su = u - a * f;
                    const i64 sv = v - b * f;
                    if (su < -B1 || su > B1 || sv < -B2 || sv > B2) continue;
                    u64 add;
                    if (__builtin_mul_overflow(wt, at(state, su, sv), &add) ||
                        __builtin_add_overflow(acc, add, &acc))
                        overflow = true;
                }
                at(next, u, v) = acc;
            }
        }
        if (overflow) throw guard_error("counter: 64-bit count overflow");
        B1 = nB1;
        B2 = nB2;
        // wipe only the reachable window of the old buffer before reuse
        state.swap(next);
#pragma omp parallel for schedule(static) if (parallel)
        for (i64 u = -B1; u <= B1; ++u)
            for (i64 v = -B2; v <= B2; ++v) at(next, u, v) = 0;

        expected_mass *= static_cast<u128>(2 * plan.P + 1);
        u128 mass = 0;
        for (i64 u = -B1; u <= B1; ++u)
            for (i64 v = -B2; v <= B2; ++v) mass += at(state, u, v);
        if (mass != expected_mass)
            throw invariant_error("counter: mass conservation failed after fold " +
                                  std::to_string(m + 1));
    }
    return at(state, 0, 0);
}

u64 fold_sparse(const FoldPlan& plan, const std::vector<ValueWeight>& vw) {
    // key = (u + U1) * (2 U2 + 1) + (v + U2)
    const i64 U1 = plan.U1, U2 = plan.U2;
    const i64 W2 = 2 * U2 + 1;
    if (static_cast<double>(2 * U1 + 1) * static_cast<double>(W2) > 9.2e18)
        throw guard_error("counter: lattice bounds exceed the sparse key range");
    auto key_of = [&](i64 u, i64 v) -> u64 {
        return static_cast<u64>(u + U1) * static_cast<u64>(W2) + static_cast<u64>(v + U2);
    };

    std::unordered_map<u64, u64> state;
    state.reserve(1024);
    state[key_of(0, 0)] = 1;

    u128 expected_mass = 1;
    for (std::size_t m = 0; m < plan.pairs.size(); ++m) {
        const auto [a, b] = plan.pairs[m];
        std::unordered_map<u64, u64> next;
        next.reserve(state.size() * vw.size());
        for (const auto& [key, count] : state) {
            const i64 u = static_cast<i64>(key / static_cast<u64>(W2)) - U1;
            const i64 v = static_cast<i64>(key % static_cast<u64>(W2)) - U2;
            for (const auto& [f, wt] : vw) {
                u64 add = 0;
                if (__builtin_mul_overflow(wt, count, &add))
                    throw guard_error("counter: 64-bit count overflow");
                checked_add(next[key_of(u + a * f, v + b * f)], add);
            }
        }
        if (next.size() > std::size_t{50000000})
            throw guard_error("counter: sparse support exceeds the entry budget");
        state = std::move(next);

        expected_mass *= static_cast<u128>(2 * plan.P + 1);
        u128 mass = 0;
        for (const auto& [key, count] : state) mass += count;
        if (mass != expected_mass)
            throw invariant_error("counter: mass conservation failed after fold " +
                                  std::to_string(m + 1));
    }
    const auto it = state.find(key_of(0, 0));
    return it == state.end() ? 0 : it->second;
}

u64 count_impl(const QuarticPairSystem& system, i64 P, bool parallel) {
    const auto plan = make_plan(system, P);
    const auto vw = fourth_power_weights(P);
    const double cells =
        static_cast<double>(2 * plan.U1 + 1) * static_cast<double>(2 * plan.U2 + 1);
    if (cells <= static_cast<double>(dense_cell_budget())) return fold_dense(plan, vw, parallel);
    return fold_sparse(plan, vw);
}

}  // namespace

std::size_t dense_cell_budget() {
    if (const char* env = std::getenv("QPL_MEMORY_BUDGET")) {
        const double bytes = std::atof(env);
        if (bytes > 0) return static_cast<std::size_t>(bytes / 16.0);  // two u64 buffers
    }
    return std::size_t{40000000};
}

u64 exact_count_N(const QuarticPairSystem& system, i64 P) { return count_impl(system, P, true); }

u64 naive_count(const QuarticPairSystem& system, i64 P) {
    system.require_valid();
    const i64 s = system.s();
    double cost = 1.0;
    for (i64 j = 0; j < s; ++j) cost *= static_cast<double>(2 * P + 1);
    if (cost > 1e8) throw guard_error("naive_count: (2P+1)^s exceeds the 1e8 budget");

    std::vector<i64> x(static_cast<std::size_t>(s), -P);
    u64 count = 0;
    while (true) {
        i64 l1 = 0, l2 = 0;
        for (i64 j = 0; j < s; ++j) {
            const i64 f = x[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)] *
                          x[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
            l1 += system.a(j) * f;
            l2 += system.b(j) * f;
        }
        if (l1 == 0 && l2 == 0) ++count;
        i64 j = 0;
        while (j < s && ++x[static_cast<std::size_t>(j)] > P) {
            x[static_cast<std::size_t>(j)] = -P;
            ++j;
        }
        if (j == s) break;
    }
    return count;
}

std::vector<GrowthRow> growth_report(const QuarticPairSystem& system, const std::vector<i64>& Ps,
                                     const std::vector<double>& predictions) {
    if (!predictions.empty() && predictions.size() != Ps.size())
        throw config_error("growth_report: predictions must align with the P list");
    std::vector<GrowthRow> rows;
    for (std::size_t i = 0; i < Ps.size(); ++i) {
        GrowthRow row;
        row.P = Ps[i];
        row.N = exact_count_N(system, Ps[i]);
        row.P_pow = std::pow(static_cast<double>(Ps[i]), static_cast<double>(system.s() - 8));
        row.normalized = static_cast<double>(row.N) / row.P_pow;
        if (!predictions.empty() && predictions[i] != 0.0) {
            row.predicted = predictions[i];
            row.ratio = static_cast<double>(row.N) / predictions[i];
        }
        rows.push_back(row);
    }
    return rows;
}

namespace serial {
u64 exact_count_N(const QuarticPairSystem& system, i64 P) { return count_impl(system, P, false); }
}  // namespace serial

}  // namespace qpl::counter
