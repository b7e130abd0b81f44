#pragma once

#include "rtsf/series.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace rtsf {

enum class AnomalyKind {
    None,
    Constant,
    Missing,
    Gaussian,
    StudentT,
    GenPareto,
    SubsequenceGaussian,
};

enum class AnomalyPosition { Uniform, Front, Middle, Back };

// Contamination model. `rate` is the per-point replacement probability eta;
// `scale` is the constant offset (Constant), the replacement value (Missing)
// or the std sigma (Gaussian / the Gaussian base of Subsequence); `shape`
// is nu (StudentT), c (GenPareto) or phi (SubsequenceGaussian).
struct AnomalySpec {
    AnomalyKind kind = AnomalyKind::None;
    double rate = 0.0;
    double scale = 0.0;
    double shape = 0.0;
    AnomalyPosition position = AnomalyPosition::Uniform;
    std::uint64_t seed = 0;

    void validate() const; // throws std::invalid_argument
};

// flags[t] != 0 iff point t was replaced.
using AnomalyMask = std::vector<std::uint8_t>;

// Independent per-point replacement with probability eta. Point kinds only,
// uniform position. Same spec (incl. seed) gives bit-identical output.
std::pair<TimeSeries, AnomalyMask> inject_point(const TimeSeries& ts, const AnomalySpec& spec);

// Region-restricted injection into window inputs: anomalies land only in the
// designated third of each window, with the in-region rate raised so the
// expected per-window count stays eta * K. Labels are untouched. Requires
// non-overlapping windows (stride >= K) and position front/middle/back.
std::pair<SupervisedDataset, std::vector<AnomalyMask>>
inject_positional(const SupervisedDataset& dataset, const AnomalySpec& spec);

// Contaminate labels only; inputs are returned bit-identical.
SupervisedDataset inject_label(const SupervisedDataset& dataset, const AnomalySpec& spec);

// Markov subsequence contamination: a clean-predecessor point flips with
// probability eta (Gaussian base rule); an anomalous-predecessor point
// continues the run with probability phi, taking the previous observed
// value plus N(0, 0.1)-variance noise, and is clean otherwise.
std::pair<TimeSeries, AnomalyMask> inject_subsequence(const TimeSeries& ts, const AnomalySpec& spec);

const char* to_string(AnomalyKind k);
const char* to_string(AnomalyPosition p);
AnomalyKind anomaly_kind_from_string(const std::string& s);
AnomalyPosition anomaly_position_from_string(const std::string& s);

} // namespace rtsf
