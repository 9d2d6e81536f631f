// weylsum.cpp
//
// Grid evaluation of the smooth Weyl sum h(alpha;P,R) and the sharp sum
// g(alpha), exact even moments via representation-count convolution, and
// numeric moments of any order.
//
// Grid samples use exact index arithmetic into a mirrored root table:
// values[j] = sum_x root[(x^4 mod M) * j mod M], so conjugate symmetry is a
// bitwise property rather than a floating-point accident.  Even moments are
// exact integers: int |h|^{2k} = sum_m r_k(m)^2 by orthogonality.

#include "qpl/weylsum.hpp"

#include <algorithm>
#include <bit>
#include <numbers>

#include "qpl/arith.hpp"
#include "qpl/parallel.hpp"

namespace qpl::weylsum {

namespace {

constexpr i64 kMaxP = 50000;  // x^4 must fit in 64 bits with headroom

void require_pow2(i64 M) {
    if (M < 2 || !std::has_single_bit(static_cast<u64>(M)))
        throw config_error("grid size M must be a power of two >= 2");
}

u64 pow4(u64 x) { return x * x * x * x; }

std::vector<u64> reduced_residues(const std::vector<u64>& fourth, u64 M) {
    std::vector<u64> r(fourth.size());
    for (std::size_t i = 0; i < fourth.size(); ++i) r[i] = fourth[i] & (M - 1);
    return r;
}

WeylGrid eval_grid_from_residues(std::vector<u64> res, i64 M, bool parallel) {
    const auto root = arith::unit_roots(M);
    const u64 mask = static_cast<u64>(M) - 1;
    WeylGrid grid;
    grid.M = M;
    grid.values.resize(static_cast<std::size_t>(M));
    auto fill = [&](i64 lo, i64 hi) {
        for (i64 j = lo; j < hi; ++j) {
            std::complex<double> acc = 0.0;
            const u64 uj = static_cast<u64>(j);
            for (u64 r : res) acc += root[(r * uj) & mask];
            grid.values[static_cast<std::size_t>(j)] = acc;
        }
    };
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (i64 j = 0; j < M; ++j) fill(j, j + 1);
    } else {
        fill(0, M);
    }
    return grid;
}

}  // namespace

i64 default_grid_size(i64 P) {
    i64 M = std::max<i64>(i64(1) << 12, 16 * P * P * P * P);
    return static_cast<i64>(std::bit_ceil(static_cast<u64>(M)));
}

std::vector<u64> fourth_powers_of_support(const SmoothParams& params) {
    if (params.P > kMaxP) throw guard_error("weylsum: P too large for 64-bit x^4");
    const auto support = arith::smooth_set(params);
    std::vector<u64> fourth(support.size());
    for (std::size_t i = 0; i < support.size(); ++i) fourth[i] = pow4(static_cast<u64>(support[i]));
    return fourth;
}

std::vector<u64> fourth_powers_of_range(i64 P, double delta) {
    if (P < 1 || P > kMaxP) throw guard_error("weylsum: P out of range");
    if (!(delta >= 0.0 && delta < 1.0)) throw config_error("weylsum: delta must lie in [0,1)");
    const i64 lo = static_cast<i64>(std::floor(delta * static_cast<double>(P)));
    std::vector<u64> fourth;
    fourth.reserve(static_cast<std::size_t>(P - lo));
    for (i64 x = lo + 1; x <= P; ++x) fourth.push_back(pow4(static_cast<u64>(x)));
    return fourth;
}

WeylGrid eval_h_grid(const SmoothParams& params, i64 M) {
    require_pow2(M);
    auto grid = eval_grid_from_residues(
        reduced_residues(fourth_powers_of_support(params), static_cast<u64>(M)), M, true);
    grid.params = params;
    grid.kind = GridKind::smooth_h;
    return grid;
}

WeylGrid eval_g_grid(i64 P, double delta, i64 M) {
    require_pow2(M);
    auto grid = eval_grid_from_residues(
        reduced_residues(fourth_powers_of_range(P, delta), static_cast<u64>(M)), M, true);
    grid.params = SmoothParams::sharp(P);
    grid.delta = delta;
    grid.kind = GridKind::sharp_g;
    return grid;
}

std::complex<double> eval_point(const std::vector<u64>& fourth_powers, double alpha) {
    alpha -= std::floor(alpha);
    double re = 0.0, im = 0.0;
    for (u64 n : fourth_powers) {
        const double phase = 2.0 * std::numbers::pi * frac_mul(alpha, n);
        re += std::cos(phase);
        im += std::sin(phase);
    }
    return {re, im};
}

RepresentationProfile representation_profile(const SmoothParams& params, i64 k) {
    if (k < 1) throw config_error("representation_profile: k must be >= 1");
    if (params.P > kMaxP) throw guard_error("representation_profile: P too large");
    const i64 P4 = params.P * params.P * params.P * params.P;
    if (static_cast<double>(k) * static_cast<double>(P4) > 2.5e8)
        throw guard_error("representation_profile: histogram exceeds the memory guard");

    const auto fourth = fourth_powers_of_support(params);
    RepresentationProfile prof;
    prof.k = k;
    prof.P4 = P4;
    prof.counts.assign(static_cast<std::size_t>(P4 + 1), 0);
    for (u64 f : fourth) prof.counts[static_cast<std::size_t>(f)] += 1;

    for (i64 step = 2; step <= k; ++step) {
        const i64 out_size = step * P4 + 1;
        std::vector<u64> next(static_cast<std::size_t>(out_size), 0);
        const std::vector<u64>& prev = prof.counts;

        // the histograms are mostly zeros: walk the nonzero sources, and let
        // each thread own an output chunk so the scatter stays conflict-free
        std::vector<std::pair<i64, u64>> nonzero;
        for (i64 m = 0; m < static_cast<i64>(prev.size()); ++m)
            if (prev[static_cast<std::size_t>(m)])
                nonzero.emplace_back(m, prev[static_cast<std::size_t>(m)]);

        const i64 chunk = 1 << 16;
        const i64 nchunk = (out_size + chunk - 1) / chunk;
        bool overflow = false;
#pragma omp parallel for schedule(dynamic, 1) reduction(||: overflow)
        for (i64 ci = 0; ci < nchunk; ++ci) {
            const i64 lo = ci * chunk, hi = std::min(out_size, lo + chunk);
            for (u64 f : fourth) {
                // sources landing in [lo, hi) under the shift f form one run
                auto it = std::lower_bound(nonzero.begin(), nonzero.end(),
                                           std::make_pair(lo - static_cast<i64>(f), u64{0}));
                for (; it != nonzero.end() && it->first + static_cast<i64>(f) < hi; ++it) {
                    const i64 t = it->first + static_cast<i64>(f);
                    if (__builtin_add_overflow(next[static_cast<std::size_t>(t)], it->second,
                                               &next[static_cast<std::size_t>(t)]))
                        overflow = true;
                }
            }
        }
        if (overflow) throw guard_error("representation_profile: count overflow");
        prof.counts = std::move(next);
    }
    return prof;
}

u64 exact_even_moment(const SmoothParams& params, i64 t) {
    if (t < 2 || t % 2 != 0) throw config_error("exact_even_moment: t must be even and >= 2");
    const auto prof = representation_profile(params, t / 2);
    u128 total = 0;
    for (u64 c : prof.counts) total += static_cast<u128>(c) * c;
    if (total > static_cast<u128>(UINT64_MAX))
        throw guard_error("exact_even_moment: value exceeds 64 bits");
    return static_cast<u64>(total);
}

double numeric_moment(const WeylGrid& grid, double t) {
    if (grid.values.empty()) throw config_error("numeric_moment: empty grid");
    const double half_t = 0.5 * t;
    const double sum = det_sum(grid.M, [&](i64 j) {
        const auto z = grid.values[static_cast<std::size_t>(j)];
        return std::pow(std::norm(z), half_t);
    });
    return sum / static_cast<double>(grid.M);
}

namespace serial {

WeylGrid eval_h_grid(const SmoothParams& params, i64 M) {
    require_pow2(M);
    auto grid = eval_grid_from_residues(
        reduced_residues(fourth_powers_of_support(params), static_cast<u64>(M)), M, false);
    grid.params = params;
    grid.kind = GridKind::smooth_h;
    return grid;
}

WeylGrid eval_g_grid(i64 P, double delta, i64 M) {
    require_pow2(M);
    auto grid = eval_grid_from_residues(
        reduced_residues(fourth_powers_of_range(P, delta), static_cast<u64>(M)), M, false);
    grid.params = SmoothParams::sharp(P);
    grid.delta = delta;
    grid.kind = GridKind::sharp_g;
    return grid;
}

RepresentationProfile representation_profile(const SmoothParams& params, i64 k) {
    if (k < 1) throw config_error("representation_profile: k must be >= 1");
    const i64 P4 = params.P * params.P * params.P * params.P;
    if (static_cast<double>(k) * static_cast<double>(P4) > 2.5e8)
        throw guard_error("representation_profile: histogram exceeds the memory guard");
    const auto fourth = fourth_powers_of_support(params);
    RepresentationProfile prof;
    prof.k = k;
    prof.P4 = P4;
    prof.counts.assign(static_cast<std::size_t>(P4 + 1), 0);
    for (u64 f : fourth) prof.counts[static_cast<std::size_t>(f)] += 1;
    for (i64 step = 2; step <= k; ++step) {
        std::vector<u64> next(static_cast<std::size_t>(step * P4 + 1), 0);
        for (std::size_t m = 0; m < prof.counts.size(); ++m) {
            if (!prof.counts[m]) continue;
            for (u64 f : fourth) next[m + f] += prof.counts[m];
        }
        prof.counts = std::move(next);
    }
    return prof;
}

double numeric_moment(const WeylGrid& grid, double t) {
    const double half_t = 0.5 * t;
    long double acc = 0.0L;
    for (const auto& z : grid.values) acc += std::pow(std::norm(z), half_t);
    return static_cast<double>(acc / static_cast<long double>(grid.M));
}

}  // namespace serial

}  // namespace qpl::weylsum
