#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <random>

#include "qpl/arith.hpp"
#include "qpl/circle.hpp"

using namespace qpl;
using namespace qpl::circle;

namespace {

// brute-force arc membership oracles
bool major_1d_brute(double alpha, double P) {
    const i64 qmax = static_cast<i64>(std::floor(std::sqrt(P)));
    for (i64 q = 1; q <= qmax; ++q)
        for (i64 a = 0; a <= q; ++a)
            if (std::gcd(a, q) == 1 &&
                std::abs(static_cast<double>(q) * alpha - static_cast<double>(a)) <=
                    std::pow(P, -3.5))
                return true;
    return false;
}

bool major_2d_brute(double alpha, double beta, const DissectionParams& par) {
    const double width = par.Q * std::pow(par.P, -4.0);
    for (i64 q = 1; q <= static_cast<i64>(std::floor(par.Q)); ++q)
        for (i64 a = 0; a <= q; ++a)
            for (i64 b = 0; b <= q; ++b) {
                if (std::gcd(std::gcd(a, b), q) != 1) continue;
                if (std::abs(alpha - static_cast<double>(a) / q) <= width &&
                    std::abs(beta - static_cast<double>(b) / q) <= width)
                    return true;
            }
    return false;
}

// plain Simpson oracle for int_0^P e(theta gamma^4) dgamma
std::complex<double> v_direct(double theta, double P, i64 n = 200001) {
    const double h = P / static_cast<double>(n - 1);
    std::complex<double> acc = 0.0;
    for (i64 i = 0; i < n; ++i) {
        const double g = static_cast<double>(i) * h;
        const double w = (i == 0 || i == n - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        const double phase = 2.0 * std::numbers::pi * theta * g * g * g * g;
        acc += w * std::complex<double>{std::cos(phase), std::sin(phase)};
    }
    return acc * (h / 3.0);
}

}  // namespace

TEST_CASE("best_rational_approx examples") {
    const auto r1 = best_rational_approx(1.0 / 3.0, 10);
    CHECK(r1.a == 1);
    CHECK(r1.q == 3);
    CHECK(r1.err < 1e-12);

    const auto r2 = best_rational_approx(0.49999, 10);
    CHECK(r2.a == 1);
    CHECK(r2.q == 2);
    CHECK(r2.err == doctest::Approx(2e-5).epsilon(1e-6));

    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    const auto r3 = best_rational_approx(golden, 12);
    CHECK(r3.a == 5);
    CHECK(r3.q == 8);
}

TEST_CASE("best_rational_approx minimizes |q alpha - a| over q <= qmax") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 2000; ++trial) {
        const double alpha = unif(rng);
        const i64 qmax = 1 + static_cast<i64>(rng() % 40);
        const auto r = best_rational_approx(alpha, qmax);
        CHECK(r.q <= qmax);
        CHECK(std::gcd(r.a < 0 ? -r.a : r.a, r.q) == 1);
        for (i64 q = 1; q <= qmax; ++q) {
            const double err =
                std::abs(static_cast<double>(q) * alpha -
                         std::llround(static_cast<double>(q) * alpha));
            CHECK(r.err <= err + 1e-12);
        }
    }
}

TEST_CASE("classify_point_2d examples and brute-force agreement") {
    auto par = DissectionParams::defaults(8.0).with_Q(3.0);
    par.P = 8.0;

    const auto origin = classify_point_2d(0.0, 0.0, par);
    REQUIRE(origin.has_value());
    CHECK(origin->q == 1);
    CHECK(origin->a == 0);
    CHECK(origin->b == 0);

    const auto half = classify_point_2d(0.5, 0.5, par);
    REQUIRE(half.has_value());
    CHECK(half->q == 2);
    CHECK(half->a == 1);
    CHECK(half->b == 1);

    CHECK(!classify_point_2d(0.2342, 0.7913, par).has_value());

    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 10000; ++trial) {
        double alpha = unif(rng), beta = unif(rng);
        if (trial % 3 == 0) {  // bias toward box neighborhoods
            const i64 q = 1 + static_cast<i64>(rng() % 3);
            alpha = static_cast<double>(rng() % static_cast<u64>(q + 1)) / q +
                    (unif(rng) - 0.5) * 0.01;
            alpha = std::min(std::max(alpha, 0.0), 0.999999);
        }
        CHECK(classify_point_2d(alpha, beta, par).has_value() ==
              major_2d_brute(alpha, beta, par));
    }
}

TEST_CASE("classify_point_1d examples and brute-force agreement") {
    CHECK(is_major_1d(0.0, 16.0));
    CHECK(is_major_1d(0.5, 16.0));
    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    CHECK(!is_major_1d(golden, 16.0));

    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 10000; ++trial) {
        double alpha = unif(rng);
        if (trial % 3 == 0) {
            const i64 q = 1 + static_cast<i64>(rng() % 4);
            alpha = static_cast<double>(rng() % static_cast<u64>(q + 1)) / q +
                    (unif(rng) - 0.5) * 2e-4;
            alpha = std::min(std::max(alpha, 0.0), 0.999999);
        }
        CHECK(is_major_1d(alpha, 20.0) == major_1d_brute(alpha, 20.0));
    }
}

TEST_CASE("A(q) hand values") {
    QuarticPairSystem sys({1, 1}, {1, -1});
    CHECK(A_of_q(1, sys) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(A_of_q(2, sys) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("divisor-sum identity: sum_{d|q} A(d) = q^{2-s} M(q)") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 4; ++trial) {
        const i64 s = 4 + static_cast<i64>(rng() % 3);
        std::vector<i64> a(static_cast<std::size_t>(s)), b(static_cast<std::size_t>(s));
        for (i64 j = 0; j < s; ++j) {
            do {
                a[static_cast<std::size_t>(j)] = static_cast<i64>(rng() % 7) - 3;
                b[static_cast<std::size_t>(j)] = static_cast<i64>(rng() % 7) - 3;
            } while (a[static_cast<std::size_t>(j)] == 0 && b[static_cast<std::size_t>(j)] == 0);
        }
        QuarticPairSystem sys(a, b);
        for (i64 q : {i64{2}, i64{5}, i64{12}, i64{16}, i64{30}}) {
            double lhs = 0.0;
            for (i64 d = 1; d <= q; ++d)
                if (q % d == 0) lhs += A_of_q(d, sys);
            const double rhs = std::pow(static_cast<double>(q), 2.0 - static_cast<double>(s)) *
                               static_cast<double>(arith::congruence_count_M(q, sys));
            CHECK(std::abs(lhs - rhs) <= 1e-6 * std::max(1.0, std::abs(rhs)));
        }
    }
}

TEST_CASE("singular series: X < 2 gives exactly 1") {
    QuarticPairSystem sys({1, -1, 2}, {1, 1, -1});
    const auto s = singular_series(sys, 1.5);
    CHECK(s.value == doctest::Approx(1.0));
    CHECK(s.rows.size() == 1);
}

TEST_CASE("singular series is positive for a locally soluble system") {
    // soluble at the real place and every p <= 73 (see test_local)
    QuarticPairSystem sys({1, 0, -1, 2, 1}, {0, 1, 1, -1, -2});
    const auto s = singular_series(sys, 64.0);
    MESSAGE("S(64) = ", s.value);
    CHECK(s.value > 0.0);
}

TEST_CASE("tilde_v values and the scaling identity") {
    CHECK(tilde_v(0.0).value.real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(tilde_v(0.0).value.imag()) < 1e-12);
    CHECK(tilde_w(0.0, 0.25).value.real() == doctest::Approx(0.75).epsilon(1e-12));

    // v(theta) = P vtilde(theta P^4) against a plain Simpson oracle
    for (double theta : {0.37, -1.2, 3.9}) {
        for (double P : {1.5, 2.0}) {
            const auto direct = v_direct(theta, P);
            const auto scaled =
                static_cast<double>(P) * tilde_v(theta * P * P * P * P).value;
            CHECK(std::abs(direct - scaled) < 1e-6);
        }
    }
}

TEST_CASE("tilde_v self-convergence and stationary-phase decay") {
    for (double u : {100.0, 1000.0, 31623.0, 100000.0}) {
        const auto coarse = tilde_v(u, 1e-8);
        const auto fine = tilde_v(u, 5e-9);
        CHECK(std::abs(coarse.value - fine.value) <=
              coarse.err_estimate + fine.err_estimate + 1e-12);
        const double normalized = std::abs(fine.value) * std::pow(1.0 + u, 0.25);
        MESSAGE("u=", u, " |v|(1+u)^{1/4} = ", normalized);
        CHECK(normalized <= 2.0);
    }
    CHECK_THROWS_AS(tilde_v(2e6), guard_error);
}

TEST_CASE("singular integral: normalization guard and variable-permutation invariance") {
    // normalized: a_2 = b_1 = 0; has a real solution in the box
    QuarticPairSystem sys({2, 0, 1, -1, 1}, {0, 1, 1, 1, -2});
    const auto J = singular_integral(sys, 8.0, 0.1);
    CHECK(J.by_X.size() >= 3);
    CHECK(J.value > 0.0);

    // permute the j >= 2 block
    QuarticPairSystem perm({2, 0, 1, 1, -1}, {0, 1, -2, 1, 1});
    const auto Jp = singular_integral(perm, 8.0, 0.1);
    CHECK(Jp.value == doctest::Approx(J.value).epsilon(1e-6));

    QuarticPairSystem bad({1, 1}, {1, 1});
    CHECK_THROWS_AS(singular_integral(bad, 8.0, 0.1), config_error);
}

TEST_CASE("prune integral J: periodicity and the crude sup bound") {
    const i64 P = 8;
    const auto g = weylsum::eval_g_grid(P, 0.1, 1 << 10);
    const SmoothParams hp(P, P);

    const double j0 = prune_integral_J(0.3, 1, 1, 1, g, hp);
    const double j1 = prune_integral_J(1.3, 1, 1, 1, g, hp);
    CHECK(std::abs(j0 - j1) <= 1e-9 * std::max(1.0, std::abs(j0)));

    // crude bound with the same arc machinery: J <= sup_M |g|^{9/4} * int_M |h|^4
    const auto gpow = weylsum::fourth_powers_of_range(P, 0.1);
    double sup = 0.0;
    for (i64 q = 1; q * q <= P; ++q)
        for (i64 a = 0; a <= q; ++a)
            sup = std::max(sup, std::abs(weylsum::eval_point(
                                    gpow, static_cast<double>(a) / std::max<i64>(q, 1))));
    const double m4 = weylsum::numeric_moment(weylsum::eval_h_grid(hp, 1 << 12), 4.0);
    CHECK(j0 <= std::pow(sup, 2.25) * m4 + 1e-9);
}

TEST_CASE("localization check finds no counterexamples at desk scale") {
    const auto rep = localization_check(64, 32.0, 2000, 424242);
    MESSAGE("positives: ", rep.positives, " / ", rep.samples);
    CHECK(rep.positives > 0);  // the importance sampler must actually hit the window
    CHECK(rep.counterexamples == 0);
}

TEST_CASE("minor arc sup is below the trivial bound and positive") {
    const double sup = minor_arc_sup_g(64, 400, 7);
    CHECK(sup > 0.0);
    CHECK(sup < 64.0);
}

TEST_CASE("main_term_prediction assembles rho, series, and integral") {
    QuarticPairSystem sys({2, 0, 1, -1, 1}, {0, 1, 1, 1, -2});
    const auto rep = main_term_prediction(sys, SmoothParams::sharp(6), 8.0, 0.1);
    CHECK(rep.rho == 1.0);  // R >= P
    CHECK(rep.scope_warning);
    CHECK(rep.leading == doctest::Approx(rep.series_X * rep.integral_X).epsilon(1e-12));
    CHECK(rep.predicted_N ==
          doctest::Approx(rep.leading * std::pow(6.0, rep.s - 8)).epsilon(1e-12));

    const auto smooth = main_term_prediction(sys, SmoothParams(6, 3), 8.0, 0.1);
    CHECK(smooth.rho < 1.0);
    CHECK(smooth.rho > 0.0);
}
