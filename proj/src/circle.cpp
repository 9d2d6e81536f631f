// circle.cpp
//
// The Hardy-Littlewood architecture: the 2D dissection into boxes N(q,a,b)
// and the 1D arcs M(q,a), the singular series S(X) = sum_q A(q) built from
// quartic Gauss sums, the oscillatory integrals v~(u) = int_0^1 e(u t^4) dt
// and w~(u,delta), the rescaled singular integral over [-X,X]^2, the pruning
// integral J(lambda;A), empirical minor-arc suprema, and the main-term
// prediction rho * S(X) * J(X).
//
// J(lambda;A) integrates arc by arc: the arcs have width P^{-7/2}/q, far
// below any feasible uniform grid spacing, so each arc carries its own
// composite rule.

#include "qpl/circle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "qpl/arith.hpp"
#include "qpl/parallel.hpp"

namespace qpl::circle {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline std::complex<double> e_of(double x) {
    const double phase = kTwoPi * x;
    return {std::cos(phase), std::sin(phase)};
}

// ---------------------------------------------------------------------------
// oscillatory quadrature: int e(u t^4) dt with phase-increment presplitting
// ---------------------------------------------------------------------------

struct AdSimpState {
    double u;
    std::complex<double> acc = 0.0;
    double err = 0.0;

    std::complex<double> f(double t) const { return e_of(u * t * t * t * t); }

    void recurse(double a, double b, std::complex<double> fa, std::complex<double> fm,
                 std::complex<double> fb, std::complex<double> whole, double tol, int depth) {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
        const std::complex<double> flm = f(lm), frm = f(rm);
        const std::complex<double> sl = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const std::complex<double> sr = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        const std::complex<double> delta = sl + sr - whole;
        if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
            acc += sl + sr + delta / 15.0;
            err += std::abs(delta) / 15.0;
            return;
        }
        recurse(a, m, fa, flm, fm, sl, 0.5 * tol, depth - 1);
        recurse(m, b, fm, frm, fb, sr, 0.5 * tol, depth - 1);
    }

    void panel(double a, double b, double tol) {
        const double m = 0.5 * (a + b);
        const std::complex<double> fa = f(a), fm = f(m), fb = f(b);
        const std::complex<double> whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        recurse(a, b, fa, fm, fb, whole, tol, 28);
    }
};

OscValue osc_quartic_integral(double u, double t0, double t1, double tol) {
    if (std::abs(u) > 1e6) throw guard_error("oscillatory integral: |u| exceeds the 1e6 guard");
    AdSimpState st{u};
    const double au = std::abs(u);
    // panel edges where the phase u t^4 passes integers
    std::vector<double> edges{t0};
    if (au > 1.0) {
        const i64 k0 = static_cast<i64>(std::ceil(au * t0 * t0 * t0 * t0));
        const i64 k1 = static_cast<i64>(std::floor(au * t1 * t1 * t1 * t1));
        for (i64 k = std::max<i64>(k0, 1); k <= k1; ++k) {
            const double t = std::pow(static_cast<double>(k) / au, 0.25);
            if (t > edges.back() + 1e-15 && t < t1 - 1e-15) edges.push_back(t);
        }
    }
    edges.push_back(t1);
    const double tol_panel = tol / static_cast<double>(edges.size());
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) st.panel(edges[i], edges[i + 1], tol_panel);
    return {st.acc, st.err};
}

// ---------------------------------------------------------------------------
// cached v~ / w~ tables for the 2D singular integral
// ---------------------------------------------------------------------------

struct OscTable {
    double h = 1.0 / 64.0;
    std::vector<std::complex<double>> vals;  // u = k*h, k = 0..N

    std::complex<double> get(i64 k) const {
        return k >= 0 ? vals[static_cast<std::size_t>(k)]
                      : std::conj(vals[static_cast<std::size_t>(-k)]);
    }

    // 4-point Lagrange interpolation; v~(-u) = conj(v~(u))
    std::complex<double> eval(double u) const {
        const bool neg = u < 0.0;
        const double x = std::abs(u) / h;
        const i64 i = static_cast<i64>(std::floor(x));
        const double s = x - static_cast<double>(i);
        const double w0 = -s * (s - 1.0) * (s - 2.0) / 6.0;
        const double w1 = (s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0;
        const double w2 = -(s + 1.0) * s * (s - 2.0) / 2.0;
        const double w3 = (s + 1.0) * s * (s - 1.0) / 6.0;
        const std::complex<double> v =
            w0 * get(i - 1) + w1 * get(i) + w2 * get(i + 1) + w3 * get(i + 2);
        return neg ? std::conj(v) : v;
    }
};

OscTable build_table(double umax, double t0, double tol) {
    OscTable tab;
    const i64 N = static_cast<i64>(std::ceil(umax / tab.h)) + 4;
    tab.vals.resize(static_cast<std::size_t>(N + 1));
#pragma omp parallel for schedule(dynamic, 64)
    for (i64 k = 0; k <= N; ++k)
        tab.vals[static_cast<std::size_t>(k)] =
            osc_quartic_integral(static_cast<double>(k) * tab.h, t0, 1.0, tol).value;
    return tab;
}

}  // namespace

DissectionParams DissectionParams::defaults(double P) {
    DissectionParams par;
    par.P = P;
    par.Q = P > std::numbers::e ? std::max(1.0, std::pow(std::log(P), 0.01)) : 1.0;
    par.delta = 0.1;
    par.X = 16.0;
    par.q_override = false;
    return par;
}

DissectionParams DissectionParams::with_Q(double Qoverride) const {
    DissectionParams par = *this;
    par.Q = Qoverride;
    par.q_override = true;
    return par;
}

void DissectionParams::validate() const {
    if (!(P > 1.0)) throw config_error("dissection: P must exceed 1");
    if (!(Q >= 1.0)) throw config_error("dissection: Q must be >= 1");
    if (!(delta > 0.0 && delta < 1.0)) throw config_error("dissection: delta must lie in (0,1)");
    if (!(X >= 1.0)) throw config_error("dissection: X must be >= 1");
}

RationalApprox best_rational_approx(double alpha, i64 qmax) {
    if (qmax < 1) throw config_error("best_rational_approx: qmax must be >= 1");
    alpha -= std::floor(alpha);

    RationalApprox best{static_cast<i64>(std::llround(alpha)), 1,
                        std::abs(alpha - std::llround(alpha))};
    auto consider = [&](i64 p, i64 q) {
        if (q < 1 || q > qmax) return;
        const double err = std::abs(static_cast<double>(q) * alpha - static_cast<double>(p));
        if (err < best.err - 1e-18 || (err <= best.err + 1e-18 && q < best.q))
            best = {p, q, err};
    };

    // continued fraction walk: p_k = a_k p_{k-1} + p_{k-2}
    i64 pm1 = 1, qm1 = 0;  // k-1 = -1 convergent
    i64 p0 = 0, q0 = 1;    // a_0 = 0 since alpha in [0,1)
    double frac = alpha;
    for (int iter = 0; iter < 64; ++iter) {
        if (frac < 1e-15) break;
        const double inv = 1.0 / frac;
        double aterm_d = std::floor(inv);
        if (aterm_d > 4e18) break;
        const i64 aterm = static_cast<i64>(aterm_d);
        // intermediate fractions of this step, then the full convergent
        for (i64 t = 1; t <= aterm; ++t) {
            const i64 q = qm1 + t * q0;
            if (q > qmax) break;
            consider(pm1 + t * p0, q);
        }
        const i64 p1 = aterm * p0 + pm1;
        const i64 q1 = aterm * q0 + qm1;
        if (q1 > qmax) break;
        pm1 = p0;
        qm1 = q0;
        p0 = p1;
        q0 = q1;
        frac = inv - aterm_d;
    }
    const i64 g = std::gcd(best.a < 0 ? -best.a : best.a, best.q);
    if (g > 1) { best.a /= g; best.q /= g; }
    return best;
}

std::optional<Box2D> classify_point_2d(double alpha, double beta, const DissectionParams& par) {
    par.validate();
    const double width = par.Q * std::pow(par.P, -4.0);
    const i64 qtop = static_cast<i64>(std::floor(par.Q));
    for (i64 q = 1; q <= qtop; ++q) {
        const i64 a = std::llround(static_cast<double>(q) * alpha);
        const i64 b = std::llround(static_cast<double>(q) * beta);
        if (std::abs(alpha - static_cast<double>(a) / static_cast<double>(q)) > width) continue;
        if (std::abs(beta - static_cast<double>(b) / static_cast<double>(q)) > width) continue;
        if (std::gcd(std::gcd(a, b), q) != 1) continue;
        return Box2D{q, a, b};
    }
    return std::nullopt;
}

bool is_major_1d(double alpha, double P) {
    if (!(P > 1.0)) throw config_error("is_major_1d: P must exceed 1");
    const i64 qmax = static_cast<i64>(std::floor(std::sqrt(P)));
    const auto approx = best_rational_approx(alpha, std::max<i64>(qmax, 1));
    return approx.err <= std::pow(P, -3.5);
}

double A_of_q(i64 q, const QuarticPairSystem& system) {
    if (q < 1) throw config_error("A_of_q: q must be >= 1");
    if (q > 2000) throw guard_error("A_of_q: q exceeds the 2000 guard");
    system.require_valid();
    const i64 s = system.s();

    auto S = arith::gauss_sum_table(q);
    for (auto& z : S) z /= static_cast<double>(q);  // each factor is S(q,c)/q

    std::vector<i64> am(static_cast<std::size_t>(s)), bm(static_cast<std::size_t>(s));
    for (i64 j = 0; j < s; ++j) {
        am[static_cast<std::size_t>(j)] = ((system.a(j) % q) + q) % q;
        bm[static_cast<std::size_t>(j)] = ((system.b(j) % q) + q) % q;
    }

    std::vector<std::complex<double>> row(static_cast<std::size_t>(q) + 1, 0.0);
#pragma omp parallel for schedule(dynamic, 8)
    for (i64 a = 1; a <= q; ++a) {
        std::complex<double> acc = 0.0;
        const i64 ga = std::gcd(a, q);
        for (i64 b = 1; b <= q; ++b) {
            if (std::gcd(ga, b) != 1) continue;
            std::complex<double> prod = 1.0;
            for (i64 j = 0; j < s; ++j) {
                const i64 c = (am[static_cast<std::size_t>(j)] * a +
                               bm[static_cast<std::size_t>(j)] * b) % q;
                prod *= S[static_cast<std::size_t>(c)];
            }
            acc += prod;
        }
        row[static_cast<std::size_t>(a)] = acc;
    }
    std::complex<double> total = 0.0;
    for (i64 a = 1; a <= q; ++a) total += row[static_cast<std::size_t>(a)];

    if (std::abs(total.imag()) > 1e-9 * (1.0 + std::abs(total.real())))
        throw invariant_error("A_of_q: imaginary part exceeds tolerance at q=" + std::to_string(q));
    return total.real();
}

SingularSeries singular_series(const QuarticPairSystem& system, double X) {
    if (!(X >= 1.0)) throw config_error("singular_series: X must be >= 1");
    if (X > 2000.0) throw guard_error("singular_series: X exceeds the 2000 guard");
    SingularSeries out;
    const i64 qtop = static_cast<i64>(std::floor(X));
    for (i64 q = 1; q <= qtop; ++q) {
        const double Aq = A_of_q(q, system);
        out.rows.push_back({q, Aq, std::abs(Aq) * std::pow(static_cast<double>(q), 2.75)});
        out.value += Aq;
    }
    return out;
}

OscValue tilde_v(double u, double tol) { return osc_quartic_integral(u, 0.0, 1.0, tol); }

OscValue tilde_w(double u, double delta, double tol) {
    if (!(delta >= 0.0 && delta < 1.0)) throw config_error("tilde_w: delta must lie in [0,1)");
    return osc_quartic_integral(u, delta, 1.0, tol);
}

namespace {

void require_normalized(const QuarticPairSystem& system) {
    if (system.s() < 2 || system.a(1) != 0 || system.b(0) != 0 || system.a(0) == 0 ||
        system.b(1) == 0)
        throw config_error("singular_integral: system must be normalized (a_2 = b_1 = 0)");
}

// composite Simpson over [-X,X]^2 of Re(w~(a1 xi) prod_j v~(a_j xi + b_j zeta))
double simpson_2d(const QuarticPairSystem& system, const OscTable& vtab, const OscTable& wtab,
                  double X, i64 n) {
    const i64 s = system.s();
    const double h = 2.0 * X / static_cast<double>(n);
    auto simpson_weight = [&](i64 k) -> double {
        if (k == 0 || k == n) return 1.0;
        return (k % 2 == 1) ? 4.0 : 2.0;
    };
    const double sum = det_sum(n + 1, [&](i64 i) {
        const double xi = -X + static_cast<double>(i) * h;
        const std::complex<double> wv = wtab.eval(system.a(0) * xi);
        long double racc = 0.0L;
        for (i64 k = 0; k <= n; ++k) {
            const double zeta = -X + static_cast<double>(k) * h;
            std::complex<double> prod = wv;
            for (i64 j = 1; j < s; ++j)
                prod *= vtab.eval(static_cast<double>(system.a(j)) * xi +
                                  static_cast<double>(system.b(j)) * zeta);
            racc += simpson_weight(k) * prod.real();
        }
        return simpson_weight(i) * static_cast<double>(racc);
    });
    return sum * h * h / 9.0;
}

}  // namespace

SingularIntegral singular_integral(const QuarticPairSystem& system, double X, double delta) {
    require_normalized(system);
    if (!(X >= 1.0)) throw config_error("singular_integral: X must be >= 1");
    if (X > 256.0) throw guard_error("singular_integral: X exceeds the 256 guard");
    if (!(delta > 0.0 && delta < 1.0))
        throw config_error("singular_integral: delta must lie in (0,1)");

    double umax_v = 0.0;
    for (i64 j = 1; j < system.s(); ++j)
        umax_v = std::max(umax_v, (std::abs(static_cast<double>(system.a(j))) +
                                   std::abs(static_cast<double>(system.b(j)))) * X);
    const double umax_w = std::abs(static_cast<double>(system.a(0))) * X;
    const OscTable vtab = build_table(umax_v + 1.0, 0.0, 1e-10);
    const OscTable wtab = build_table(umax_w + 1.0, delta, 1e-10);

    SingularIntegral out;
    std::vector<double> xs;
    for (double x = X; x >= 1.0 && xs.size() < 4; x *= 0.5) xs.push_back(x);
    std::reverse(xs.begin(), xs.end());

    for (double Xk : xs) {
        // refine the grid until the composite value stabilizes
        i64 n = 2 * static_cast<i64>(std::ceil(4.0 * Xk));
        double val = simpson_2d(system, vtab, wtab, Xk, n);
        for (int level = 0; level < 4; ++level) {
            const double next = simpson_2d(system, vtab, wtab, Xk, 2 * n);
            const bool done = std::abs(next - val) <= 1e-6 * (1.0 + std::abs(next));
            val = next;
            n *= 2;
            if (done) break;
        }
        out.by_X.push_back({Xk, val});
        out.value = val;
    }
    return out;
}

double prune_integral_J(double lambda, i64 A_num, i64 A_den, i64 a1,
                        const weylsum::WeylGrid& ggrid, const SmoothParams& hparams,
                        i64 points_per_arc) {
    if (A_den == 0) throw config_error("prune_integral_J: A must have nonzero denominator");
    if (points_per_arc < 3) throw config_error("prune_integral_J: need at least 3 points per arc");
    if (points_per_arc % 2 == 0) ++points_per_arc;
    const i64 P = ggrid.params.P;
    if (P > 4096) throw guard_error("prune_integral_J: P exceeds the 4096 guard");

    const auto gpow = weylsum::fourth_powers_of_range(P, ggrid.delta);
    const auto hpow = weylsum::fourth_powers_of_support(hparams);
    const double A = static_cast<double>(A_num) / static_cast<double>(A_den);

    auto integrand = [&](double theta) {
        const double gv = std::abs(weylsum::eval_point(gpow, static_cast<double>(a1) * theta));
        const double hv = std::abs(weylsum::eval_point(hpow, A * theta + lambda));
        return std::pow(gv, 2.25) * hv * hv * hv * hv;
    };

    // enumerate the arcs M(q,a), clip to [0,1]
    struct Arc { double lo, hi; };
    std::vector<Arc> arcs;
    const double Pd = static_cast<double>(P);
    const i64 qmax = static_cast<i64>(std::floor(std::sqrt(Pd)));
    for (i64 q = 1; q <= std::max<i64>(qmax, 1); ++q) {
        const double w = std::pow(Pd, -3.5) / static_cast<double>(q);
        for (i64 a = 0; a <= q; ++a) {
            if (std::gcd(a, q) != 1) continue;
            const double c = static_cast<double>(a) / static_cast<double>(q);
            arcs.push_back({std::max(0.0, c - w), std::min(1.0, c + w)});
        }
    }

    std::vector<double> partial(arcs.size(), 0.0);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t k = 0; k < arcs.size(); ++k) {
        const auto [lo, hi] = arcs[k];
        if (hi <= lo) continue;
        const i64 n = points_per_arc - 1;
        const double h = (hi - lo) / static_cast<double>(n);
        long double acc = integrand(lo) + integrand(hi);
        for (i64 i = 1; i < n; ++i)
            acc += ((i % 2 == 1) ? 4.0 : 2.0) * integrand(lo + static_cast<double>(i) * h);
        partial[k] = static_cast<double>(acc) * h / 3.0;
    }
    long double total = 0.0L;
    for (double p : partial) total += p;
    return static_cast<double>(total);
}

double minor_arc_sup_g(i64 P, i64 samples, u64 seed) {
    if (P < 2) throw config_error("minor_arc_sup_g: P must be >= 2");
    const auto gpow = weylsum::fourth_powers_of_range(P, 0.0);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> alphas;
    alphas.reserve(static_cast<std::size_t>(samples));
    for (i64 i = 0; i < samples; ++i) {
        const double alpha = unif(rng);
        if (!is_major_1d(alpha, static_cast<double>(P))) alphas.push_back(alpha);
    }
    double best = 0.0;
#pragma omp parallel for reduction(max : best) schedule(static)
    for (std::size_t i = 0; i < alphas.size(); ++i)
        best = std::max(best, std::abs(weylsum::eval_point(gpow, alphas[i])));
    return best;
}

LocalizationCheck localization_check(i64 P, double Q, i64 samples, u64 seed) {
    if (P < 2 || !(Q >= 1.0)) throw config_error("localization_check: need P >= 2 and Q >= 1");
    const auto hpow = weylsum::fourth_powers_of_support(SmoothParams::sharp(P));
    const double Pd = static_cast<double>(P);
    const double threshold = Pd * std::pow(Q, -0.01);
    const double qcap = std::pow(Q, 0.1);
    const i64 qmax = std::max<i64>(1, static_cast<i64>(std::floor(qcap)));
    const double window = qcap * std::pow(Pd, -4.0);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    LocalizationCheck out;
    out.samples = samples;
    out.threshold = threshold;
    for (i64 i = 0; i < samples; ++i) {
        double theta;
        if (i % 2 == 0) {
            theta = unif(rng);
        } else {
            // importance sample near the candidate rationals
            const i64 q = 1 + static_cast<i64>(rng() % static_cast<u64>(qmax));
            const i64 a = static_cast<i64>(rng() % static_cast<u64>(q + 1));
            const double off = (2.0 * unif(rng) - 1.0) * 8.0 * window / static_cast<double>(q);
            theta = static_cast<double>(a) / static_cast<double>(q) + off;
            theta -= std::floor(theta);
        }
        if (std::abs(weylsum::eval_point(hpow, theta)) < threshold) continue;
        ++out.positives;
        bool admits = false;
        for (i64 q = 1; q <= qmax && !admits; ++q) {
            const double qt = static_cast<double>(q) * theta;
            const double err = std::abs(qt - std::llround(qt));
            if (err <= qcap * std::pow(Pd, -4.0)) admits = true;
        }
        if (!admits) ++out.counterexamples;
    }
    return out;
}

PredictionReport main_term_prediction(const QuarticPairSystem& system, const SmoothParams& sp,
                                      double X, double delta) {
    system.require_valid();
    PredictionReport rep;
    rep.P = static_cast<double>(sp.P);
    rep.s = system.s();
    rep.X = X;
    rep.delta = delta;
    rep.scope_warning = system.s() < 22;
    rep.smoothness_off = sp.R >= sp.P;
    if (rep.smoothness_off) {
        rep.rho = 1.0;
    } else {
        const double density = static_cast<double>(arith::smooth_set(sp).size()) /
                               static_cast<double>(sp.P);
        rep.rho = std::pow(density, static_cast<double>(system.s() - 1));
    }
    rep.series_X = singular_series(system, X).value;
    rep.integral_X = singular_integral(system, X, delta).value;
    rep.leading = rep.rho * rep.series_X * rep.integral_X;
    rep.predicted_N = rep.leading * std::pow(rep.P, static_cast<double>(system.s() - 8));
    return rep;
}

}  // namespace qpl::circle
