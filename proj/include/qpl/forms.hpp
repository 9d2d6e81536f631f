#pragma once

#include <array>
#include <string>
#include <vector>

#include "qpl/types.hpp"

namespace qpl::forms {

// Canonical projective representative of a nonzero integer pair over Q:
// divide by gcd, first nonzero coordinate positive.
std::pair<i64, i64> canonical_pair(std::pair<i64, i64> p);

struct Violation {
    i64 index;  // 0-based coefficient index, -1 for whole-system notes
    std::string what;
    bool fatal;
};

// Diagnostic pass: (0,0) pairs are fatal, s < 22 is a scope warning only.
std::vector<Violation> validate_system(const QuarticPairSystem& system);

struct RankWitness {
    bool pass;
    std::pair<i64, i64> direction;  // annihilating (c,d) on failure
    i64 annihilated;                // forms killed by that direction
};

// Passes iff every projective direction annihilates at most `slack` forms;
// equivalently, max equivalence-class multiplicity <= slack.
RankWitness rank_condition(const QuarticPairSystem& system, i64 slack = 7);

struct EquivalenceClassing {
    std::vector<std::vector<i64>> classes;       // sorted 0-based index lists
    std::vector<std::pair<i64, i64>> canonical;  // representative per class
    std::vector<i64> multiplicities;             // aligned class sizes

    i64 max_multiplicity() const;
};

// Fibers of canonical_pair; classes ordered by smallest member index.
EquivalenceClassing equivalence_classes(const QuarticPairSystem& system);

struct SubsetSelection {
    std::vector<i64> indices;  // 0-based, subset of {1..s-1}, card 21
    std::vector<i64> r;        // class multiplicities within the subset, nonincreasing
    i64 t;                     // number of classes represented
};

// Deterministic choice of the 21-form subset: classes among indices {1..s-1}
// taken in decreasing size then increasing smallest index, each capped at 7,
// filling to 21 with the smallest member indices first.
SubsetSelection select_S21(const QuarticPairSystem& system);

struct NormalizedFrame {
    QuarticPairSystem system;  // transformed and relabeled: a_2 = b_1 = 0, a_1 b_2 != 0
    // new equation r = (row[r][0]*L1 + row[r][1]*L2) / den[r]
    std::array<std::array<i64, 2>, 2> row;
    std::array<i64, 2> den;
    std::vector<i64> variable_order;  // new position -> original index
    bool already_normalized;
};

// Realize the frame a_2 = b_1 = 0 by integer row operations pivoting on
// variables i and j (0-based).  Throws config_error when the 2x2 pivot
// block is singular.
NormalizedFrame normalize_frame(const QuarticPairSystem& system, i64 i, i64 j);

struct ShuffleReport {
    i64 reachable_states;
    i64 max_path_length;
    bool all_terminate_at_777;
};

// Explores the multiplicity-shuffling move system: with the parts sorted
// nonincreasing and the last two equal to (u, v) with u < 7, replace them by
// (u+1, v-1), drop zeros, re-sort.  Verifies by memoized search that every
// maximal path ends at (7,7,7).
ShuffleReport shuffle_schedule(std::vector<i64> r);

}  // namespace qpl::forms
