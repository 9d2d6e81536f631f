#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qpl {

// Deterministic parallel reduction.
//
// All floating-point sums in the heavy kernels go through det_sum: the index
// range is cut into fixed-size chunks (independent of the thread count), each
// chunk is accumulated serially in long double, and the chunk partials are
// folded in chunk order.  Repeated runs therefore produce bit-identical
// results for any OMP_NUM_THREADS.

inline int num_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

inline void set_num_threads(int n) {
#ifdef _OPENMP
    if (n > 0) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

namespace detail {
constexpr std::int64_t kChunk = 1 << 14;
}

// Sums body(i) for i in [0, n).  body must be pure.
template <class Body>
double det_sum(std::int64_t n, Body&& body) {
    if (n <= 0) return 0.0;
    const std::int64_t nchunk = (n + detail::kChunk - 1) / detail::kChunk;
    std::vector<long double> partial(static_cast<std::size_t>(nchunk), 0.0L);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t c = 0; c < nchunk; ++c) {
        const std::int64_t lo = c * detail::kChunk;
        const std::int64_t hi = std::min(n, lo + detail::kChunk);
        long double acc = 0.0L;
        for (std::int64_t i = lo; i < hi; ++i) acc += static_cast<long double>(body(i));
        partial[static_cast<std::size_t>(c)] = acc;
    }
    long double total = 0.0L;
    for (long double p : partial) total += p;
    return static_cast<double>(total);
}

// Chunked variant: body(lo, hi) returns the serial partial sum over [lo, hi).
// Lets kernels keep per-chunk state (running indices, local tables).
template <class ChunkBody>
double det_sum_chunked(std::int64_t n, ChunkBody&& body) {
    if (n <= 0) return 0.0;
    const std::int64_t nchunk = (n + detail::kChunk - 1) / detail::kChunk;
    std::vector<long double> partial(static_cast<std::size_t>(nchunk), 0.0L);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t c = 0; c < nchunk; ++c) {
        const std::int64_t lo = c * detail::kChunk;
        const std::int64_t hi = std::min(n, lo + detail::kChunk);
        partial[static_cast<std::size_t>(c)] = static_cast<long double>(body(lo, hi));
    }
    long double total = 0.0L;
    for (long double p : partial) total += p;
    return static_cast<double>(total);
}

}  // namespace qpl
