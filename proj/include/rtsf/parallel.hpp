#pragma once

#include <cstddef>
#include <span>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rtsf::par {

// All reductions here are blocked: the index range is cut into fixed-size
// blocks, each block is summed serially in index order, and the block
// partials are combined serially in block order. The result is therefore
// bit-identical no matter how many OpenMP threads execute the blocks.
inline constexpr std::size_t kBlock = 2048;

inline int thread_count() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// sum of f(i) for i in [0, n)
template <typename F>
double blocked_sum(std::size_t n, F&& f) {
    if (n == 0) return 0.0;
    const std::size_t nb = (n + kBlock - 1) / kBlock;
    if (nb == 1) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) acc += f(i);
        return acc;
    }
    std::vector<double> partial(nb, 0.0);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(nb); ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
        const std::size_t hi = lo + kBlock < n ? lo + kBlock : n;
        double acc = 0.0;
        for (std::size_t i = lo; i < hi; ++i) acc += f(i);
        partial[static_cast<std::size_t>(b)] = acc;
    }
    double acc = 0.0;
    for (double p : partial) acc += p;
    return acc;
}

// Vector-valued reduction: f(i, out) adds sample i's contribution into a
// dim-length accumulator. Partials live in per-block rows, combined in
// block order.
template <typename F>
void blocked_accumulate(std::size_t n, std::size_t dim, F&& f, std::span<double> out) {
    for (double& v : out) v = 0.0;
    if (n == 0) return;
    const std::size_t nb = (n + kBlock - 1) / kBlock;
    if (nb == 1) {
        for (std::size_t i = 0; i < n; ++i) f(i, out);
        return;
    }
    std::vector<double> partial(nb * dim, 0.0);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(nb); ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
        const std::size_t hi = lo + kBlock < n ? lo + kBlock : n;
        std::span<double> row(partial.data() + static_cast<std::size_t>(b) * dim, dim);
        for (std::size_t i = lo; i < hi; ++i) f(i, row);
    }
    for (std::size_t b = 0; b < nb; ++b)
        for (std::size_t d = 0; d < dim; ++d) out[d] += partial[b * dim + d];
}

// Independent per-index work writing to disjoint slots; no reduction, so
// plain static scheduling is already deterministic.
template <typename F>
void parallel_for(std::size_t n, F&& f) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
        f(static_cast<std::size_t>(i));
}

} // namespace rtsf::par
