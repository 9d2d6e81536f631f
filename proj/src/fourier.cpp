// fourier.cpp
//
// Fourier coefficients of |h|^e (e = 7 in the main line of work), their
// cubic moments and dyadic shells, the multi-form correlation integrals on
// the 2D grid, and the two-pipeline verification of the identity
//   I(a,b,c,d) = sum_n psi_a(cn) psi_b(dn) psi(n).
//
// The 2D accumulation walks each form's index with a running stride
// (c*i + d*k mod M), so the inner loop is three table loads and two
// multiplies; rows are chunked for the deterministic parallel reduction.

#include "qpl/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qpl/fft.hpp"
#include "qpl/parallel.hpp"

namespace qpl::fourier {

namespace {

std::vector<double> weight_table(const weylsum::WeylGrid& grid, double exponent) {
    std::vector<double> w(grid.values.size());
    const double half_e = 0.5 * exponent;
#pragma omp parallel for schedule(static)
    for (i64 j = 0; j < static_cast<i64>(w.size()); ++j)
        w[static_cast<std::size_t>(j)] =
            std::pow(std::norm(grid.values[static_cast<std::size_t>(j)]), half_e);
    return w;
}

inline i64 mod_pos(i64 x, i64 M) {
    i64 r = x % M;
    return r < 0 ? r + M : r;
}

// per-q nearest-fraction structure for the 2D box masks
struct BoxTables {
    i64 M = 0;
    std::vector<std::vector<i64>> nearest;  // [q-1][i] -> a
    std::vector<std::vector<char>> inside;  // [q-1][i] -> |i/M - a/q| <= Q P^-4

    bool member(i64 i, i64 k) const {
        for (std::size_t qi = 0; qi < nearest.size(); ++qi) {
            if (!inside[qi][static_cast<std::size_t>(i)] ||
                !inside[qi][static_cast<std::size_t>(k)])
                continue;
            const i64 q = static_cast<i64>(qi) + 1;
            const i64 a = nearest[qi][static_cast<std::size_t>(i)];
            const i64 b = nearest[qi][static_cast<std::size_t>(k)];
            if (std::gcd(std::gcd(a, b), q) == 1) return true;
        }
        return false;
    }
};

BoxTables build_box_tables(i64 M, const circle::DissectionParams& dis) {
    dis.validate();
    BoxTables bt;
    bt.M = M;
    const i64 qtop = std::max<i64>(1, static_cast<i64>(std::floor(dis.Q)));
    const double width = dis.Q * std::pow(dis.P, -4.0);
    bt.nearest.resize(static_cast<std::size_t>(qtop));
    bt.inside.resize(static_cast<std::size_t>(qtop));
    for (i64 q = 1; q <= qtop; ++q) {
        auto& near_q = bt.nearest[static_cast<std::size_t>(q - 1)];
        auto& in_q = bt.inside[static_cast<std::size_t>(q - 1)];
        near_q.resize(static_cast<std::size_t>(M));
        in_q.resize(static_cast<std::size_t>(M));
        for (i64 i = 0; i < M; ++i) {
            const double alpha = static_cast<double>(i) / static_cast<double>(M);
            const i64 a = std::llround(static_cast<double>(q) * alpha);
            near_q[static_cast<std::size_t>(i)] = a;
            in_q[static_cast<std::size_t>(i)] =
                std::abs(alpha - static_cast<double>(a) / static_cast<double>(q)) <= width;
        }
    }
    return bt;
}

struct CorrelationPlan {
    i64 M = 0;
    std::vector<std::vector<double>> weights;  // per form
    std::vector<i64> c, d;
};

CorrelationPlan make_plan(const CorrelationSpec& spec,
                          const std::vector<const weylsum::WeylGrid*>& grids) {
    if (spec.forms.empty()) throw config_error("correlation: no forms given");
    if (grids.empty()) throw config_error("correlation: no grids given");
    if (grids.size() != 1 && grids.size() != spec.forms.size())
        throw config_error("correlation: need one grid per form or a single shared grid");

    CorrelationPlan plan;
    plan.M = grids.front()->M;
    for (const auto* g : grids)
        if (g->M != plan.M) throw config_error("correlation: grids must share M");

    for (std::size_t f = 0; f < spec.forms.size(); ++f) {
        const auto& fe = spec.forms[f];
        if (fe.c == 0 && fe.d == 0) throw config_error("correlation: (0,0) form");
        if (!(fe.e > 0)) throw config_error("correlation: exponents must be positive");
        const auto* g = grids.size() == 1 ? grids.front() : grids[f];
        const i64 P = g->params.P;
        const i64 maxfreq = std::max(std::llabs(fe.c), std::llabs(fe.d)) * P * P * P * P;
        if (maxfreq > plan.M / 2)
            throw guard_error("correlation: form frequency " + std::to_string(maxfreq) +
                              " exceeds M/2 anti-aliasing guard");
        plan.weights.push_back(weight_table(*g, fe.e));
        plan.c.push_back(fe.c);
        plan.d.push_back(fe.d);
    }
    return plan;
}

template <class RowFilter, class CellFilter>
double correlate(const CorrelationPlan& plan, RowFilter&& row_ok, CellFilter&& cell_ok) {
    const i64 M = plan.M;
    const std::size_t F = plan.weights.size();
    const double sum = det_sum_chunked(M, [&](i64 lo, i64 hi) {
        long double acc = 0.0L;
        std::vector<i64> idx(F), step(F);
        for (i64 i = lo; i < hi; ++i) {
            if (!row_ok(i)) continue;
            for (std::size_t f = 0; f < F; ++f) {
                idx[f] = mod_pos(plan.c[f] * i, M);
                step[f] = mod_pos(plan.d[f], M);
            }
            long double row = 0.0L;
            for (i64 k = 0; k < M; ++k) {
                if (cell_ok(i, k)) {
                    double prod = 1.0;
                    for (std::size_t f = 0; f < F; ++f)
                        prod *= plan.weights[f][static_cast<std::size_t>(idx[f])];
                    row += prod;
                }
                for (std::size_t f = 0; f < F; ++f) {
                    idx[f] += step[f];
                    if (idx[f] >= M) idx[f] -= M;
                }
            }
            acc += row;
        }
        return static_cast<double>(acc);
    });
    return sum / (static_cast<double>(plan.M) * static_cast<double>(plan.M));
}

}  // namespace

double PsiTable::psi(i64 n) const {
    const i64 an = n < 0 ? -n : n;
    if (an > nmax)
        throw truncation_error("psi: |n| = " + std::to_string(an) + " outside table (nmax = " +
                               std::to_string(nmax) + ")");
    return values[static_cast<std::size_t>(an)];
}

PsiTable psi_table(const weylsum::WeylGrid& grid, i64 nmax, double exponent) {
    const i64 M = grid.M;
    if (nmax < 0 || nmax >= M / 2)
        throw truncation_error("psi_table: need 0 <= nmax < M/2");
    if (!(exponent > 0)) throw config_error("psi_table: exponent must be positive");

    const auto w = weight_table(grid, exponent);
    std::vector<std::complex<double>> buf(w.begin(), w.end());
    fft::transform_pow2(buf, -1);

    PsiTable table;
    table.P = grid.params.P;
    table.R = grid.params.R;
    table.M = M;
    table.exponent = exponent;
    table.nmax = nmax;
    table.values.resize(static_cast<std::size_t>(nmax) + 1);
    const double invM = 1.0 / static_cast<double>(M);
    for (i64 n = 0; n <= nmax; ++n)
        table.values[static_cast<std::size_t>(n)] = buf[static_cast<std::size_t>(n)].real() * invM;

    // psi(0) at half resolution = mean of the even-index samples
    long double half = 0.0L;
    for (i64 j = 0; j < M; j += 2) half += w[static_cast<std::size_t>(j)];
    half /= static_cast<long double>(M / 2);
    table.aliasing_estimate = std::abs(table.values[0] - static_cast<double>(half));
    return table;
}

double psi_dilate(const PsiTable& table, i64 l, i64 m) {
    if (l == 0) throw config_error("psi_dilate: l must be nonzero");
    if (m % l != 0) return 0.0;
    return table.psi(m / l);
}

double cubic_moment(const PsiTable& table, double floor_value) {
    long double acc = 0.0L;
    for (i64 n = 0; n <= table.nmax; ++n) {
        const double a = std::abs(table.values[static_cast<std::size_t>(n)]);
        if (a <= floor_value) continue;
        acc += (n == 0 ? 1.0L : 2.0L) * static_cast<long double>(a) * a * a;
    }
    return static_cast<double>(acc);
}

double dyadic_MT(const PsiTable& table, double T) {
    if (!(T > 0)) throw config_error("dyadic_MT: T must be positive");
    long double acc = 0.0L;
    for (i64 n = 0; n <= table.nmax; ++n) {
        const double a = std::abs(table.values[static_cast<std::size_t>(n)]);
        if (a <= T || a > 2.0 * T) continue;
        acc += (n == 0 ? 1.0L : 2.0L) * static_cast<long double>(a) * a * a;
    }
    return static_cast<double>(acc);
}

double decay_constant(const PsiTable& table) {
    const i64 P4 = table.P * table.P * table.P * table.P;
    const double P15 = std::pow(static_cast<double>(table.P), 15.0);
    double best = 0.0;
    for (i64 n = 2 * P4; n <= table.nmax; ++n) {
        const double a = std::abs(table.values[static_cast<std::size_t>(n)]);
        best = std::max(best, a * static_cast<double>(n) * static_cast<double>(n) / P15);
    }
    return best;
}

double cubic_tail_bound(const PsiTable& table, double C) {
    // sum_{n > nmax} 2 (C P^15 / n^2)^3 <= 2 C^3 P^45 / (5 nmax^5)
    const double P15 = std::pow(static_cast<double>(table.P), 15.0);
    const double amp = C * P15;
    return 2.0 * amp * amp * amp / (5.0 * std::pow(static_cast<double>(table.nmax), 5.0));
}

double multi_form_correlation(const CorrelationSpec& spec,
                              const std::vector<const weylsum::WeylGrid*>& grids,
                              const circle::DissectionParams& dis) {
    const auto plan = make_plan(spec, grids);
    const auto all = [](i64) { return true; };
    const auto all2 = [](i64, i64) { return true; };

    switch (spec.region) {
        case Region::FullSquare:
            return correlate(plan, all, all2);
        case Region::AlphaMajor1D:
        case Region::AlphaMinor1D: {
            dis.validate();
            std::vector<char> row_mask(static_cast<std::size_t>(plan.M));
            const bool want = spec.region == Region::AlphaMajor1D;
#pragma omp parallel for schedule(static)
            for (i64 i = 0; i < plan.M; ++i)
                row_mask[static_cast<std::size_t>(i)] =
                    circle::is_major_1d(static_cast<double>(i) / static_cast<double>(plan.M),
                                        dis.P) == want;
            return correlate(
                plan, [&](i64 i) { return row_mask[static_cast<std::size_t>(i)] != 0; }, all2);
        }
        case Region::Major2D:
        case Region::Minor2D: {
            const auto bt = build_box_tables(plan.M, dis);
            const bool want = spec.region == Region::Major2D;
            return correlate(plan, all,
                             [&](i64 i, i64 k) { return bt.member(i, k) == want; });
        }
    }
    throw config_error("correlation: unknown region tag");
}

namespace serial {

double multi_form_correlation(const CorrelationSpec& spec,
                              const std::vector<const weylsum::WeylGrid*>& grids,
                              const circle::DissectionParams& dis) {
    if (spec.region != Region::FullSquare)
        throw config_error("serial correlation: full square only");
    (void)dis;
    const auto plan = make_plan(spec, grids);
    const i64 M = plan.M;
    const std::size_t F = plan.weights.size();
    long double acc = 0.0L;
    for (i64 i = 0; i < M; ++i) {
        for (i64 k = 0; k < M; ++k) {
            double prod = 1.0;
            for (std::size_t f = 0; f < F; ++f)
                prod *= plan.weights[f][static_cast<std::size_t>(
                    mod_pos(plan.c[f] * i + plan.d[f] * k, M))];
            acc += prod;
        }
    }
    return static_cast<double>(acc) / (static_cast<double>(M) * static_cast<double>(M));
}

}  // namespace serial

IdentityReport verify_correlation_identity(i64 a, i64 b, i64 c, i64 d, const SmoothParams& params,
                                       i64 M) {
    if (a == 0 || b == 0 || c == 0 || d == 0)
        throw config_error("correlation identity: a, b, c, d must be nonzero");

    const auto grid = weylsum::eval_h_grid(params, M);
    const i64 nmax = M / 2 - 1;
    const auto table = psi_table(grid, nmax, 7.0);

    CorrelationSpec spec;
    spec.forms = {{a, 0, 7.0}, {0, b, 7.0}, {c, d, 7.0}};
    spec.region = Region::FullSquare;
    const double lhs =
        multi_form_correlation(spec, {&grid}, circle::DissectionParams::defaults(2.0));

    // dilated psi values vanish (to the table's decay) outside the range
    auto dilate_or_zero = [&](i64 l, i64 m) -> double {
        if (m % l != 0) return 0.0;
        const i64 n = m / l;
        return (n < -nmax || n > nmax) ? 0.0 : table.psi(n);
    };
    long double rhs = 0.0L;
    for (i64 n = -nmax; n <= nmax; ++n) {
        const double pa = dilate_or_zero(a, c * n);
        if (pa == 0.0) continue;
        const double pb = dilate_or_zero(b, d * n);
        if (pb == 0.0) continue;
        rhs += static_cast<long double>(pa) * pb * table.psi(n);
    }

    IdentityReport rep;
    rep.lhs_quadrature = lhs;
    rep.rhs_psi_sum = static_cast<double>(rhs);
    rep.abs_residual = std::abs(rep.lhs_quadrature - rep.rhs_psi_sum);
    rep.rel_residual = rep.abs_residual / std::max(std::abs(rep.lhs_quadrature), 1e-300);
    rep.aliasing_estimate = table.aliasing_estimate;
    rep.nmax = nmax;
    rep.M = M;
    return rep;
}

}  // namespace qpl::fourier
