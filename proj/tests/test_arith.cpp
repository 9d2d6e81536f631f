#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <random>

#include "qpl/arith.hpp"

using namespace qpl;
using arith::congruence_count_M;
using arith::congruence_count_rho;
using arith::gauss_sum;
using arith::kappa;
using arith::smooth_set;

namespace {

// independent oracle: trial factorization
bool is_smooth_trial(i64 n, i64 R) {
    for (i64 p = 2; p * p <= n; ++p) {
        while (n % p == 0) {
            if (p > R) return false;
            n /= p;
        }
    }
    return n == 1 || n <= R;
}

std::complex<double> e_of(double x) {
    return {std::cos(2.0 * std::numbers::pi * x), std::sin(2.0 * std::numbers::pi * x)};
}

}  // namespace

TEST_CASE("smooth_set basic examples") {
    const auto all = smooth_set(SmoothParams(10, 10));
    REQUIRE(all.size() == 10);
    for (i64 n = 1; n <= 10; ++n) CHECK(all[static_cast<std::size_t>(n - 1)] == n);

    CHECK(smooth_set(SmoothParams(10, 2)) == std::vector<i64>{1, 2, 4, 8});

    // frozen from the trial-factorization oracle
    std::vector<i64> expected;
    for (i64 n = 1; n <= 30; ++n)
        if (is_smooth_trial(n, 3)) expected.push_back(n);
    CHECK(expected == std::vector<i64>{1, 2, 3, 4, 6, 8, 9, 12, 16, 18, 24, 27});
    CHECK(smooth_set(SmoothParams(30, 3)) == expected);
}

TEST_CASE("smooth_set monotone in R; full when R >= P") {
    for (i64 P : {17, 40}) {
        std::vector<i64> prev;
        for (i64 R = 1; R <= P + 2; ++R) {
            const auto cur = smooth_set(SmoothParams(P, R));
            CHECK(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()));
            prev = cur;
        }
        CHECK(static_cast<i64>(smooth_set(SmoothParams(P, P)).size()) == P);
    }
    CHECK_THROWS_AS(smooth_set(SmoothParams(0, 1)), config_error);
}

TEST_CASE("kappa prime-power table and examples") {
    CHECK(kappa(1) == doctest::Approx(1.0));
    CHECK(kappa(16) == doctest::Approx(0.5));
    CHECK(kappa(48) == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-12));
    CHECK(kappa(2) == doctest::Approx(4.0 / std::sqrt(2.0)));
    CHECK(kappa(4) == doctest::Approx(0.5));
    CHECK(kappa(8) == doctest::Approx(0.5));
    CHECK_THROWS_AS(kappa(0), config_error);
}

TEST_CASE("kappa is multiplicative on random coprime pairs") {
    std::mt19937_64 rng(7);
    int done = 0;
    while (done < 200) {
        const i64 q1 = 1 + static_cast<i64>(rng() % 10000);
        const i64 q2 = 1 + static_cast<i64>(rng() % 10000);
        if (std::gcd(q1, q2) != 1) continue;
        ++done;
        const double lhs = kappa(q1 * q2);
        const double rhs = kappa(q1) * kappa(q2);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs));
    }
}

TEST_CASE("gauss_sum examples") {
    CHECK(gauss_sum(1, 0) == std::complex<double>{1.0, 0.0});
    CHECK(std::abs(gauss_sum(2, 1)) < 1e-14);

    // fourth powers mod 5 are {0,1,1,1,1}
    const auto s51 = gauss_sum(5, 1);
    const auto expected = 1.0 + 4.0 * e_of(1.0 / 5.0);
    CHECK(std::abs(s51 - expected) < 1e-12);
}

TEST_CASE("gauss_sum |S| <= q and S(q,0) = q") {
    for (i64 q = 1; q <= 50; ++q) {
        CHECK(std::abs(gauss_sum(q, 0) - std::complex<double>(static_cast<double>(q), 0.0)) <
              1e-9);
        for (i64 a : {i64{1}, i64{3}, q - 1}) {
            CHECK(std::abs(gauss_sum(q, a)) <= static_cast<double>(q) * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("gauss_sum twisted multiplicativity") {
    // S(q1 q2, a) = S(q1, a q2^3) S(q2, a q1^3) for coprime q1, q2
    std::mt19937_64 rng(11);
    int done = 0;
    while (done < 60) {
        const i64 q1 = 2 + static_cast<i64>(rng() % 14);
        const i64 q2 = 2 + static_cast<i64>(rng() % 14);
        if (std::gcd(q1, q2) != 1 || q1 * q2 > 200) continue;
        ++done;
        const i64 a = 1 + static_cast<i64>(rng() % (q1 * q2));
        const auto lhs = gauss_sum(q1 * q2, a);
        const auto rhs = gauss_sum(q1, a * q2 * q2 * q2) * gauss_sum(q2, a * q1 * q1 * q1);
        CHECK(std::abs(lhs - rhs) < 1e-9);
    }
}

TEST_CASE("rho examples and the quadruple-loop oracle") {
    CHECK(congruence_count_rho(1) == 1);
    CHECK(congruence_count_rho(2) == 8);
    CHECK(congruence_count_rho(5) == 321);
    for (i64 q = 1; q <= 30; ++q)
        CHECK(congruence_count_rho(q) == arith::serial::congruence_count_rho(q));
}

TEST_CASE("congruence_count_M examples") {
    QuarticPairSystem sys({1, 1}, {1, -1});
    CHECK(congruence_count_M(1, sys) == 1);
    CHECK(congruence_count_M(2, sys) == 2);

    QuarticPairSystem bad({0}, {0});
    CHECK_THROWS_AS(congruence_count_M(2, bad), config_error);
}

TEST_CASE("congruence_count_M against the q^s enumeration") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        const i64 s = 2 + static_cast<i64>(rng() % 3);
        std::vector<i64> a(static_cast<std::size_t>(s)), b(static_cast<std::size_t>(s));
        for (i64 j = 0; j < s; ++j) {
            do {
                a[static_cast<std::size_t>(j)] = static_cast<i64>(rng() % 7) - 3;
                b[static_cast<std::size_t>(j)] = static_cast<i64>(rng() % 7) - 3;
            } while (a[static_cast<std::size_t>(j)] == 0 && b[static_cast<std::size_t>(j)] == 0);
        }
        QuarticPairSystem sys(a, b);
        const i64 q = 2 + static_cast<i64>(rng() % 11);
        CHECK(congruence_count_M(q, sys) == arith::serial::congruence_count_M(q, sys));
    }
}

TEST_CASE("report: |S(q,a)|/(kappa(q) q) stays within 4x of its q <= 50 range") {
    double max_small = 0.0, max_large = 0.0;
    for (i64 q = 2; q <= 200; ++q) {
        const auto roots = arith::gauss_sum_table(q);
        for (i64 a = 1; a < q; ++a) {
            if (std::gcd(a, q) != 1) continue;
            const double ratio =
                std::abs(roots[static_cast<std::size_t>(a)]) / (kappa(q) * static_cast<double>(q));
            if (q <= 50) max_small = std::max(max_small, ratio);
            max_large = std::max(max_large, ratio);
        }
    }
    MESSAGE("kappa-normalized Gauss ratio: q<=50 max ", max_small, ", q<=200 max ", max_large);
    CHECK(max_large <= 4.0 * max_small);
}
