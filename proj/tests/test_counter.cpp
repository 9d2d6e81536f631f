#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>

#include "qpl/counter.hpp"

using namespace qpl;
using namespace qpl::counter;

namespace {

QuarticPairSystem random_system(std::mt19937_64& rng, i64 s, i64 range) {
    std::vector<i64> a(static_cast<std::size_t>(s)), b(static_cast<std::size_t>(s));
    for (i64 j = 0; j < s; ++j) {
        do {
            a[static_cast<std::size_t>(j)] =
                static_cast<i64>(rng() % static_cast<u64>(2 * range + 1)) - range;
            b[static_cast<std::size_t>(j)] =
                static_cast<i64>(rng() % static_cast<u64>(2 * range + 1)) - range;
        } while (a[static_cast<std::size_t>(j)] == 0 && b[static_cast<std::size_t>(j)] == 0);
    }
    return {a, b};
}

}  // namespace

TEST_CASE("closed-form examples") {
    // x1^4 = x2^4 and x1^4 = -x2^4 force x = 0
    QuarticPairSystem pinched({1, -1}, {1, 1});
    for (i64 P : {i64{1}, i64{3}, i64{10}}) CHECK(exact_count_N(pinched, P) == 1);

    // single variable: x^4 = 0
    QuarticPairSystem single({1}, {0});
    CHECK(exact_count_N(single, 5) == 1);

    // the 8P+1 family
    QuarticPairSystem family({1, 1, -2}, {1, -1, 0});
    for (i64 P = 1; P <= 20; ++P)
        CHECK(exact_count_N(family, P) == static_cast<u64>(8 * P + 1));
}

TEST_CASE("exact and naive agree on random small systems") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 40; ++trial) {
        const i64 s = 2 + static_cast<i64>(rng() % 4);
        const i64 P = 1 + static_cast<i64>(rng() % 6);
        const auto sys = random_system(rng, s, 3);
        CHECK(exact_count_N(sys, P) == naive_count(sys, P));
    }
}

TEST_CASE("parallel and serial folds agree") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 10; ++trial) {
        const auto sys = random_system(rng, 4, 2);
        CHECK(exact_count_N(sys, 5) == serial::exact_count_N(sys, 5));
    }
}

TEST_CASE("negating the equations and permuting variables leave N unchanged") {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 12; ++trial) {
        const i64 s = 3 + static_cast<i64>(rng() % 2);
        auto sys = random_system(rng, s, 2);
        const u64 base = exact_count_N(sys, 4);

        auto negated = sys;  // both equations scaled by -1
        for (auto& pr : negated.pairs) pr = {-pr.first, -pr.second};
        CHECK(exact_count_N(negated, 4) == base);

        auto permuted = sys;
        std::reverse(permuted.pairs.begin(), permuted.pairs.end());
        CHECK(exact_count_N(permuted, 4) == base);
    }
}

TEST_CASE("negating a single coefficient pair can change N") {
    // x^4 is even, so flipping a variable's sign is a symmetry; flipping one
    // coefficient column is not: a solution with x_j != 0 cannot transfer.
    QuarticPairSystem sys({1, -1, 0}, {0, 0, 1});
    QuarticPairSystem negated({-1, -1, 0}, {0, 0, 1});
    CHECK(exact_count_N(sys, 1) == 5);
    CHECK(exact_count_N(negated, 1) == 1);
}

TEST_CASE("solution counts of sign-symmetric boxes are odd") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 10; ++trial) {
        const auto sys = random_system(rng, 3, 2);
        CHECK(exact_count_N(sys, 3) % 2 == 1);
    }
}

TEST_CASE("growth report columns") {
    QuarticPairSystem family({1, 1, -2}, {1, -1, 0});
    const auto rows = growth_report(family, {1, 2, 4, 8});
    REQUIRE(rows.size() == 4);
    for (const auto& r : rows) {
        CHECK(r.N == static_cast<u64>(8 * r.P + 1));
        // s = 3: normalizer P^{-5}
        CHECK(r.P_pow == doctest::Approx(std::pow(static_cast<double>(r.P), -5.0)));
        CHECK(r.normalized ==
              doctest::Approx(static_cast<double>(r.N) * std::pow(static_cast<double>(r.P), 5.0)));
    }
    // doubling P scales the normalizer by 2^{s-8} exactly
    CHECK(rows[1].P_pow == doctest::Approx(rows[0].P_pow * std::pow(2.0, -5.0)));

    CHECK_THROWS_AS(naive_count(QuarticPairSystem({1, 1, 1, 1, 1, 1}, {1, 1, 1, 1, 1, -1}), 50),
                    guard_error);
}
