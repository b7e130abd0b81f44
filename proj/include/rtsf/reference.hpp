#pragma once

// Plain serial implementations of the hot kernels. These are the reference
// the OpenMP paths are tested and benchmarked against; they are not used on
// any production code path.

#include <cmath>
#include <cstddef>
#include <span>

namespace rtsf::reference {

inline double mae(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
    return s / static_cast<double>(a.size());
}

inline double mse(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s / static_cast<double>(a.size());
}

// Direct summation of the weighted residual score.
inline double anomaly_score(std::span<const double> x, std::span<const double> s,
                            std::span<const double> w) {
    double acc = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) acc += w[k] * std::abs(x[k] - s[k]);
    return acc;
}

} // namespace rtsf::reference
