#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "qpl/errors.hpp"

namespace qpl {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128_t;
using u128 = __uint128_t;

// Box height P and smoothness bound R for the smooth set
// A(P,R) = { n in [1,P] : p prime, p | n  =>  p <= R }.
// R >= P switches smoothness off (A = [1,P]).  When constructed from an
// exponent eta, R = ceil(P^eta).
struct SmoothParams {
    i64 P = 1;
    i64 R = 1;
    std::optional<double> eta;

    SmoothParams() = default;
    SmoothParams(i64 P_, i64 R_) : P(P_), R(R_) { validate(); }

    static SmoothParams from_eta(i64 P_, double eta_) {
        if (!(eta_ >= 0.0)) throw config_error("SmoothParams: eta must be >= 0");
        SmoothParams sp;
        sp.P = P_;
        sp.R = static_cast<i64>(std::ceil(std::pow(static_cast<double>(P_), eta_)));
        if (sp.R < 1) sp.R = 1;
        sp.eta = eta_;
        sp.validate();
        return sp;
    }

    // smoothness disabled: A(P,R) = [1,P]
    static SmoothParams sharp(i64 P_) { return SmoothParams(P_, P_); }

    bool smoothness_active() const { return R < P; }

    void validate() const {
        if (P < 1) throw config_error("SmoothParams: P must be >= 1");
        if (R < 1) throw config_error("SmoothParams: R must be >= 1");
    }
};

// Admissible exponents Delta_t with int |h|^t <= C * P^(t-4+Delta_t).
// Fixed constants, never recomputed.
struct AdmissibleExponents {
    double delta7 = 0.849408;
    double delta10 = 0.213431;
    double delta12 = 0.0;
};

// The coefficient pairs (a_j, b_j) of a pair of diagonal quartic equations
//   sum_j a_j x_j^4 = sum_j b_j x_j^4 = 0,
// together with the derived linear forms L1(t) = sum a_j t_j and
// L2(t) = sum b_j t_j.  Every pair must be nonzero.
struct QuarticPairSystem {
    std::vector<std::pair<i64, i64>> pairs;

    QuarticPairSystem() = default;
    QuarticPairSystem(std::vector<i64> a, std::vector<i64> b) {
        if (a.size() != b.size()) throw config_error("system: a and b must have equal length");
        pairs.reserve(a.size());
        for (std::size_t j = 0; j < a.size(); ++j) pairs.emplace_back(a[j], b[j]);
    }

    i64 s() const { return static_cast<i64>(pairs.size()); }
    i64 a(i64 j) const { return pairs[static_cast<std::size_t>(j)].first; }   // 0-based
    i64 b(i64 j) const { return pairs[static_cast<std::size_t>(j)].second; }

    // Throws on a (0,0) pair; s >= 1 required.
    void require_valid() const {
        if (pairs.empty()) throw config_error("system: s must be >= 1");
        for (std::size_t j = 0; j < pairs.size(); ++j)
            if (pairs[j].first == 0 && pairs[j].second == 0)
                throw config_error("system: coefficient pair " + std::to_string(j + 1) +
                                   " is (0,0)");
    }
};

}  // namespace qpl
