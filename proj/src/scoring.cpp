#include "rtsf/scoring.hpp"

#include "rtsf/parallel.hpp"

#include <cmath>
#include <stdexcept>

namespace rtsf {

void WeightSpec::validate() const {
    if (window_len == 0) throw std::invalid_argument("weight window_len must be positive");
    if (kind == WeightKind::Dirac && (k_prime < 1 || k_prime > window_len))
        throw std::invalid_argument("Dirac cutoff must satisfy 1 <= k_prime <= K");
}

void SelectionConfig::validate() const {
    if (!(tau > 0.0)) throw std::invalid_argument("selection tau must be > 0");
    weight.validate();
}

std::vector<double> weights(const WeightSpec& spec) {
    spec.validate();
    const std::size_t k = spec.window_len;
    std::vector<double> w(k);
    for (std::size_t i = 0; i < k; ++i) {
        const double pos = static_cast<double>(i + 1); // 1-based step
        if (spec.kind == WeightKind::Exponential) {
            const double d = pos - static_cast<double>(k);
            w[i] = std::exp(-d * d);
        } else {
            w[i] = pos >= static_cast<double>(spec.k_prime) ? 1.0 : 0.0;
        }
    }
    return w;
}

double anomaly_score(std::span<const double> x, std::span<const double> s,
                     std::span<const double> w) {
    if (x.size() != s.size() || x.size() != w.size())
        throw std::invalid_argument("anomaly_score: length mismatch");
    double acc = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) acc += w[k] * std::abs(x[k] - s[k]);
    return acc;
}

std::vector<double> batch_scores(const std::vector<WindowTriplet>& triplets,
                                 std::span<const double> w) {
    std::vector<double> scores(triplets.size());
    par::parallel_for(triplets.size(), [&](std::size_t n) {
        scores[n] = anomaly_score(triplets[n].input, triplets[n].trend, w);
    });
    return scores;
}

std::vector<std::uint8_t> select(const std::vector<WindowTriplet>& triplets,
                                 const SelectionConfig& cfg) {
    cfg.validate();
    if (triplets.empty()) throw std::invalid_argument("select: empty input");
    const auto w = weights(cfg.weight);
    const auto scores = batch_scores(triplets, w);
    std::vector<std::uint8_t> mask(triplets.size());
    for (std::size_t n = 0; n < scores.size(); ++n) mask[n] = scores[n] < cfg.tau ? 1 : 0;
    return mask;
}

std::vector<double> repair_test_window(std::span<const double> x, std::span<const double> s,
                                       double tau) {
    if (x.size() != s.size()) throw std::invalid_argument("repair_test_window: length mismatch");
    if (x.empty()) throw std::invalid_argument("repair_test_window: empty window");
    if (!(tau > 0.0)) throw std::invalid_argument("repair_test_window: tau must be > 0");
    std::vector<double> out(x.begin(), x.end());
    const std::size_t last = x.size() - 1;
    if (std::abs(x[last] - s[last]) >= tau) out[last] = s[last];
    return out;
}

} // namespace rtsf
