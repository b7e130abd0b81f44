#pragma once

#include "rtsf/trend.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace rtsf {

enum class WeightKind { Dirac, Exponential };

// Non-decreasing residual weights over a length-K window. Dirac puts unit
// weight on steps K' .. K (closed at the window end, so k_prime = K-1
// weights the last two steps); Exponential is exp(-(k-K)^2) for k = 1..K.
struct WeightSpec {
    WeightKind kind = WeightKind::Dirac;
    std::size_t k_prime = 1; // 1-based cutoff, 1 <= k_prime <= K
    std::size_t window_len = 0;

    void validate() const;
};

std::vector<double> weights(const WeightSpec& spec);

// Weighted absolute deviation of a window from its trend slice.
double anomaly_score(std::span<const double> x, std::span<const double> s,
                     std::span<const double> w);

// Scores for every triplet; parallel across windows.
std::vector<double> batch_scores(const std::vector<WindowTriplet>& triplets,
                                 std::span<const double> w);

struct SelectionConfig {
    double tau = 0.3;
    WeightSpec weight;

    void validate() const;
};

// mask[n] = 1 iff score(triplet n) < tau (strict). Training later keeps only
// masked-in samples.
std::vector<std::uint8_t> select(const std::vector<WindowTriplet>& triplets,
                                 const SelectionConfig& cfg);

// Test-time repair: when the last step deviates from the trend by tau or
// more, substitute the trend's last value. Only the final position is ever
// modified.
std::vector<double> repair_test_window(std::span<const double> x, std::span<const double> s,
                                       double tau);

} // namespace rtsf
