#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qpl/types.hpp"

namespace qpl::local {

struct RealSolution {
    std::vector<double> theta;  // in (0,1)^s
    double residual1 = 0.0;     // |L1(theta^4)|
    double residual2 = 0.0;     // |L2(theta^4)|
    double jacobian_minor = 0.0;
    i64 pivot_i = -1, pivot_j = -1;  // 0-based
};

// Randomized starts + Newton on the two pivot coordinates with the rest
// held fixed.  nullopt after the attempt budget means inconclusive, never
// insoluble.
std::optional<RealSolution> real_nonsingular_solution(const QuarticPairSystem& system,
                                                      i64 attempts, u64 seed);

enum class Status { Soluble, Insoluble, Assumed, Unknown };

struct LocalVerdict {
    i64 p = 0;  // 0 for the real place
    Status status = Status::Unknown;
    std::string note;

    // p-adic certificate: congruences hold mod p^(2 tau + 1) and the pivot
    // minor 16 (a_i b_j - a_j b_i) x_i^3 x_j^3 has valuation exactly tau.
    std::vector<i64> witness;
    i64 modulus = 0;
    i64 tau = -1;
    i64 pivot_i = -1, pivot_j = -1;
};

// Verdict for one prime: "soluble" via a liftable certificate, "insoluble"
// via a vanishing primitive-solution count mod p^k, "assumed" for p > 73
// with s >= 21 (rank condition holding), "unknown" when the depth budget is
// exhausted.
LocalVerdict padic_nonsingular(const QuarticPairSystem& system, i64 p, i64 depth);

// Re-verifies a soluble certificate from scratch.
bool verify_padic_certificate(const QuarticPairSystem& system, const LocalVerdict& v);

struct SolubilityReport {
    std::optional<RealSolution> real;
    std::vector<LocalVerdict> primes;  // p <= 73
    std::string assumed_note;          // the p > 73 range
    enum class Overall { Satisfied, Violated, Unknown } overall = Overall::Unknown;
};

SolubilityReport local_solubility_report(const QuarticPairSystem& system, i64 depth,
                                         i64 attempts = 200, u64 seed = 12345);

}  // namespace qpl::local
