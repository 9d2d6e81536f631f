#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "qpl/fourier.hpp"
#include "qpl/weylsum.hpp"

using namespace qpl;
using namespace qpl::fourier;
using weylsum::eval_h_grid;

namespace {

PsiTable table_for(i64 P, i64 R, i64 M, double exponent = 7.0) {
    const auto grid = eval_h_grid(SmoothParams(P, R), M);
    return psi_table(grid, M / 4, exponent);
}

}  // namespace

TEST_CASE("psi table invariants") {
    const auto grid = eval_h_grid(SmoothParams(3, 3), 1 << 12);
    const auto t = psi_table(grid, (1 << 12) / 4);

    CHECK(t.psi(-7) == t.psi(7));
    CHECK(t.psi0() >= 0.0);
    for (i64 n = 0; n <= t.nmax; ++n) CHECK(std::abs(t.psi(n)) <= t.psi0() * (1.0 + 1e-12));

    // psi(0) is the 7th moment of the same grid
    const double m7 = weylsum::numeric_moment(grid, 7.0);
    CHECK(t.psi0() == doctest::Approx(m7).epsilon(1e-12));

    CHECK_THROWS_AS(t.psi(t.nmax + 1), truncation_error);
    CHECK_THROWS_AS(psi_table(grid, 1 << 11), truncation_error);
}

TEST_CASE("P=2 support: psi vanishes off multiples of 15") {
    const auto t = table_for(2, 2, 1 << 12);
    for (i64 n = 1; n <= 40; ++n) {
        if (n % 15 == 0) continue;
        CHECK(std::abs(t.psi(n)) < 1e-10);
    }
    CHECK(std::abs(t.psi(15)) > 1e-3);  // the first harmonic is real
}

TEST_CASE("psi_dilate") {
    const auto t = table_for(2, 2, 1 << 10);
    CHECK(psi_dilate(t, 1, 7) == t.psi(7));
    CHECK(psi_dilate(t, 2, 3) == 0.0);
    CHECK(psi_dilate(t, 2, 30) == t.psi(15));
    CHECK(psi_dilate(t, -3, 45) == t.psi(-15));
    CHECK_THROWS_AS(psi_dilate(t, 2, 2 * (t.nmax + 1)), truncation_error);
}

TEST_CASE("cubic moment and dyadic shells") {
    const auto t = table_for(4, 4, 1 << 12);

    CHECK(cubic_moment(t, 2.0 * t.psi0()) == 0.0);
    CHECK(dyadic_MT(t, 2.0 * t.psi0()) == 0.0);

    // shells (2^l, 2^{l+1}] partition (1, 2^top]; their sums rebuild the moment
    const double total = cubic_moment(t, 1.0);
    double shells = 0.0;
    double max_shell = 0.0;
    i64 nshells = 0;
    for (double T = 1.0; T <= t.psi0(); T *= 2.0) {
        const double MT = dyadic_MT(t, T);
        shells += MT;
        max_shell = std::max(max_shell, MT);
        ++nshells;
    }
    CHECK(shells == doctest::Approx(total).epsilon(1e-12));
    // pigeonhole: the best shell carries at least the average
    CHECK(max_shell >= total / static_cast<double>(nshells) * (1.0 - 1e-12));
}

TEST_CASE("|h|^6 coefficients equal representation-difference counts") {
    for (i64 P : {2LL, 4LL, 6LL}) {
        const SmoothParams sp(P, P);
        const i64 M = weylsum::default_grid_size(P);
        const auto grid = eval_h_grid(sp, M);
        const auto t6 = psi_table(grid, M / 4, 6.0);

        const auto prof = weylsum::representation_profile(sp, 3);
        // c6(n) = sum_m r3(m) r3(m - n) over the profile support
        for (i64 n : {i64{0}, i64{1}, i64{15}, i64{16}, i64{17}, 3 * P * P * P * P}) {
            if (n > t6.nmax) continue;
            long double count = 0.0L;
            for (i64 m = 0; m < static_cast<i64>(prof.counts.size()); ++m)
                count += static_cast<long double>(prof.at(m)) *
                         static_cast<long double>(prof.at(m - n));
            CHECK(std::abs(t6.psi(n) - static_cast<double>(count)) <= 1e-6);
        }
    }
}

TEST_CASE("psi aliasing estimate is recorded and small") {
    const auto t = table_for(3, 3, 1 << 13);
    CHECK(t.aliasing_estimate >= 0.0);
    CHECK(t.aliasing_estimate <= 1e-6 * std::max(t.psi0(), 1.0));
}

TEST_CASE("correlation with one 12th-power form matches the exact moment") {
    const SmoothParams sp(2, 2);
    const i64 M = 1 << 12;
    const auto grid = eval_h_grid(sp, M);
    CorrelationSpec spec;
    spec.forms = {{1, 0, 12.0}};
    const double corr =
        multi_form_correlation(spec, {&grid}, circle::DissectionParams::defaults(2.0));
    const double exact = static_cast<double>(weylsum::exact_even_moment(sp, 12));
    CHECK(std::abs(corr - exact) <= 1e-6 * exact);
}

TEST_CASE("correlation symmetries: negated forms and transposed swap") {
    const SmoothParams sp(3, 3);
    const i64 M = 1 << 11;
    const auto grid = eval_h_grid(sp, M);
    const auto dis = circle::DissectionParams::defaults(3.0);

    CorrelationSpec spec;
    spec.forms = {{1, 0, 7.0}, {0, 1, 7.0}, {1, 1, 7.0}};
    const double base = multi_form_correlation(spec, {&grid}, dis);

    CorrelationSpec negated = spec;
    negated.forms[2] = {-1, -1, 7.0};
    CHECK(multi_form_correlation(negated, {&grid}, dis) ==
          doctest::Approx(base).epsilon(1e-12));

    CorrelationSpec swapped;  // alpha <-> beta with transposed coefficients
    swapped.forms = {{0, 1, 7.0}, {1, 0, 7.0}, {1, 1, 7.0}};
    CHECK(multi_form_correlation(swapped, {&grid}, dis) ==
          doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("parallel and serial correlation agree") {
    const SmoothParams sp(2, 2);
    const auto grid = eval_h_grid(sp, 1 << 10);
    CorrelationSpec spec;
    spec.forms = {{1, 0, 7.0}, {0, 1, 7.0}, {2, 1, 7.0}};
    const auto dis = circle::DissectionParams::defaults(2.0);
    const double a = multi_form_correlation(spec, {&grid}, dis);
    const double b = serial::multi_form_correlation(spec, {&grid}, dis);
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
}

TEST_CASE("region-restricted correlations partition the full square") {
    const SmoothParams sp(2, 2);
    const i64 M = 1 << 9;
    const auto grid = eval_h_grid(sp, M);
    auto dis = circle::DissectionParams::defaults(4.0).with_Q(3.0);
    dis.P = 4.0;

    CorrelationSpec spec;
    spec.forms = {{1, 0, 7.0}, {0, 1, 7.0}, {1, 1, 7.0}};

    spec.region = Region::FullSquare;
    const double full = multi_form_correlation(spec, {&grid}, dis);
    spec.region = Region::Major2D;
    const double major = multi_form_correlation(spec, {&grid}, dis);
    spec.region = Region::Minor2D;
    const double minor = multi_form_correlation(spec, {&grid}, dis);
    CHECK(major + minor == doctest::Approx(full).epsilon(1e-12));
    CHECK(major > 0.0);

    spec.region = Region::AlphaMajor1D;
    const double amaj = multi_form_correlation(spec, {&grid}, dis);
    spec.region = Region::AlphaMinor1D;
    const double amin = multi_form_correlation(spec, {&grid}, dis);
    CHECK(amaj + amin == doctest::Approx(full).epsilon(1e-12));
}

TEST_CASE("anti-aliasing guard rejects oversized form frequencies") {
    const SmoothParams sp(4, 4);
    const auto grid = eval_h_grid(sp, 1 << 10);  // P^4 = 256, M/2 = 512
    CorrelationSpec spec;
    spec.forms = {{3, 0, 7.0}};  // 3*256 = 768 > 512
    CHECK_THROWS_AS(
        multi_form_correlation(spec, {&grid}, circle::DissectionParams::defaults(4.0)),
        guard_error);
}

TEST_CASE("correlation identity at P = 4 for the three coefficient tuples") {
    const SmoothParams sp(4, 4);
    for (auto [a, b, c, d] : {std::array<i64, 4>{1, 1, 1, 1}, std::array<i64, 4>{1, 1, 2, 1},
                              std::array<i64, 4>{2, 3, 1, 1}}) {
        const auto rep = verify_correlation_identity(a, b, c, d, sp, 1 << 12);
        MESSAGE("(", a, ",", b, ",", c, ",", d, "): lhs ", rep.lhs_quadrature, " rhs ",
                rep.rhs_psi_sum, " rel ", rep.rel_residual);
        CHECK(rep.rel_residual <= 1e-3);
    }
    CHECK_THROWS_AS(verify_correlation_identity(0, 1, 1, 1, sp, 1 << 12), config_error);
}

TEST_CASE("psi decay trend: n^2-normalized maxima stay calibrated") {
    double calib = 0.0;
    for (i64 P : {4LL, 6LL}) {
        const i64 M = weylsum::default_grid_size(P);
        const auto grid = eval_h_grid(SmoothParams(P, P), M);
        const auto t = psi_table(grid, M / 4);
        const double c = decay_constant(t);
        MESSAGE("P=", P, " decay constant ", c);
        if (P == 4)
            calib = c;
        else
            CHECK(c <= 4.0 * calib);
    }
}
