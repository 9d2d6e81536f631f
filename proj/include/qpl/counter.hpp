#pragma once

#include <vector>

#include "qpl/types.hpp"

namespace qpl::counter {

// N(P): number of integer solutions of the pair with |x_j| <= P, exact.
// Folds one variable at a time into a histogram over the value lattice
// (L1 partial, L2 partial); dense array when it fits the memory budget,
// hash map otherwise.  Throws guard_error on overflow or budget violations.
u64 exact_count_N(const QuarticPairSystem& system, i64 P);

// Nested-loop enumeration; budget (2P+1)^s <= 1e8.
u64 naive_count(const QuarticPairSystem& system, i64 P);

// Memory budget for the dense lattice, in cells (two u64 buffers are live).
// Defaults to 4e7 cells; override with the QPL_MEMORY_BUDGET env var (bytes).
std::size_t dense_cell_budget();

struct GrowthRow {
    i64 P = 0;
    u64 N = 0;
    double P_pow = 0.0;       // P^{s-8}
    double normalized = 0.0;  // N / P^{s-8}
    double predicted = 0.0;   // prediction hook, 0 when absent
    double ratio = 0.0;       // N / predicted, 0 when absent
};

// No pass/fail: the asymptotic regime is unreachable at desk scale, the
// table just renders N(P) against its normalizers.
std::vector<GrowthRow> growth_report(const QuarticPairSystem& system, const std::vector<i64>& Ps,
                                     const std::vector<double>& predictions = {});

namespace serial {
u64 exact_count_N(const QuarticPairSystem& system, i64 P);  // single-threaded fold
}

}  // namespace qpl::counter
