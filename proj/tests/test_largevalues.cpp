#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "qpl/largevalues.hpp"

using namespace qpl;
using namespace qpl::largevalues;

namespace {

struct Fixture {
    weylsum::WeylGrid grid;
    fourier::PsiTable table;

    explicit Fixture(i64 P, i64 M) {
        grid = weylsum::eval_h_grid(SmoothParams(P, P), M);
        table = fourier::psi_table(grid, M / 4);
    }
};

}  // namespace

TEST_CASE("build_Z shell membership and symmetry") {
    Fixture fx(2, 1 << 12);

    const auto empty = build_Z(fx.table, 2.0 * fx.table.psi0());
    CHECK(empty.Z == 0);

    // shell around |psi(15)|
    const double a15 = std::abs(fx.table.psi(15));
    REQUIRE(a15 > 0.0);
    const auto set = build_Z(fx.table, 0.9 * a15);
    CHECK(set.Z >= 2);
    bool has15 = false, hasm15 = false;
    for (std::size_t i = 0; i < set.indices.size(); ++i) {
        if (set.indices[i] == 15) has15 = true;
        if (set.indices[i] == -15) hasm15 = true;
    }
    CHECK(has15);
    CHECK(hasm15);
    // symmetry of membership and signs
    for (i64 n : set.indices) {
        const auto it = std::find(set.indices.begin(), set.indices.end(), -n);
        CHECK(it != set.indices.end());
    }
    CHECK_THROWS_AS(build_Z(fx.table, 0.0), config_error);
}

TEST_CASE("kernel grid: K(0), emptiness, realness, Parseval") {
    Fixture fx(2, 1 << 12);

    const auto empty = build_Z(fx.table, 3.0 * fx.table.psi0());
    const auto K0 = K_grid(empty, fx.grid.M);
    for (double v : K0.values) CHECK(v == 0.0);

    const double a15 = std::abs(fx.table.psi(15));
    const auto set = build_Z(fx.table, 0.9 * a15);
    const auto K = K_grid(set, fx.grid.M);

    // K(0) = sum of signs
    double sign_sum = 0.0;
    for (int s : set.signs) sign_sum += s;
    CHECK(K.values[0] == doctest::Approx(sign_sum).epsilon(1e-12));

    // realness: max imaginary part <= 1e-10 sqrt(Z)
    CHECK(K.max_imag <= 1e-10 * std::sqrt(static_cast<double>(set.Z)));

    // Parseval: mean of K^2 = Z
    long double acc = 0.0L;
    for (double v : K.values) acc += static_cast<long double>(v) * v;
    const double parseval = static_cast<double>(acc) / static_cast<double>(K.M);
    CHECK(parseval == doctest::Approx(static_cast<double>(set.Z)).epsilon(1e-9));
}

TEST_CASE("kernel identity: int |h|^7 K equals sum_Z |psi| and exceeds T Z") {
    for (i64 P : {2LL, 4LL}) {
        Fixture fx(P, weylsum::default_grid_size(P));
        // sweep dyadic shells from psi0 downward
        for (double T = fx.table.psi0() * 0.51; T > 1e-4 * fx.table.psi0(); T *= 0.5) {
            const auto set = build_Z(fx.table, T);
            if (set.Z == 0) continue;
            const auto K = K_grid(set, fx.grid.M);
            const auto rep = verify_kernel_identity(fx.grid, set, K, fx.table);
            CHECK(rep.rel_residual <= 1e-6);
            CHECK(rep.strict_gt);
            CHECK(rep.sum_abs_psi > rep.TZ);
        }
    }
}

TEST_CASE("mixed moment with Z = {0}: K is constant and the value is the 4th moment") {
    Fixture fx(4, weylsum::default_grid_size(4));
    const auto set = build_Z(fx.table, 0.9 * fx.table.psi0());
    REQUIRE(set.Z == 1);  // only n = 0 sits in the top shell
    REQUIRE(set.indices[0] == 0);
    const auto K = K_grid(set, fx.grid.M);
    const auto rep = mixed_moment_h4K2(fx.grid, K, set);
    const double m4 = static_cast<double>(weylsum::exact_even_moment(SmoothParams(4, 4), 4));
    CHECK(rep.value == doctest::Approx(m4).epsilon(1e-6));
    CHECK(rep.bound_P3Z == doctest::Approx(64.0));
}

TEST_CASE("large-value bound values and regime flags") {
    const AdmissibleExponents exps;
    // the exponent 13 + Delta10/2 evaluates to 13.1067155
    CHECK(13.0 + 0.5 * exps.delta10 == doctest::Approx(13.1067155).epsilon(1e-12));

    const double P = 4.0, T = 10.0;
    const auto b = large_value_bounds(5.0, T, P, exps);
    const double B1 = std::pow(P, 28.0 / 3.0 + exps.delta10 / 3.0) / (T * T) +
                      std::pow(P, 13.0 + 0.5 * exps.delta10) / (T * T * T);
    const double B2 = std::pow(P, 9.0 + exps.delta10) / (T * T) +
                      std::pow(P, 16.0 + 2.0 * exps.delta10) / std::pow(T, 4.0);
    CHECK(b.B1 == doctest::Approx(B1).epsilon(1e-12));
    CHECK(b.B2 == doctest::Approx(B2).epsilon(1e-12));

    const double split = std::pow(P, 3.0 + 1.5 * exps.delta10);
    CHECK(large_value_bounds(1.0, split, P, exps).boundary);
    CHECK(large_value_bounds(1.0, split, P, exps).low_T_regime);
    CHECK(!large_value_bounds(1.0, 2.0 * split, P, exps).low_T_regime);
}

TEST_CASE("mixed-moment ratio trend across P with 4x calibration") {
    double calib = 0.0;
    for (i64 P : {2LL, 4LL, 6LL}) {
        Fixture fx(P, weylsum::default_grid_size(P));
        double worst = 0.0;
        for (double T = fx.table.psi0() * 0.51; T > 0.01 * fx.table.psi0(); T *= 0.5) {
            const auto set = build_Z(fx.table, T);
            if (set.Z == 0) continue;
            const auto K = K_grid(set, fx.grid.M);
            worst = std::max(worst, mixed_moment_h4K2(fx.grid, K, set).ratio);
        }
        MESSAGE("P=", P, " worst ratio ", worst);
        if (P == 2)
            calib = worst;
        else
            CHECK(worst <= 4.0 * calib);
    }
}

TEST_CASE("report: Z against the large-value bounds across small P") {
    for (i64 P : {2LL, 4LL, 6LL}) {
        Fixture fx(P, weylsum::default_grid_size(P));
        const AdmissibleExponents exps;
        for (double T = fx.table.psi0() * 0.51; T > 0.01 * fx.table.psi0(); T *= 0.5) {
            const auto set = build_Z(fx.table, T);
            if (set.Z == 0) continue;
            const auto b = large_value_bounds(static_cast<double>(set.Z), T,
                                          static_cast<double>(P), exps);
            const double zbound = 10.0 * std::min(b.B1, b.B2);
            MESSAGE("P=", P, " T=", T, " Z=", set.Z, " bound=", zbound);
            CHECK(static_cast<double>(set.Z) <= zbound);
        }
    }
}
