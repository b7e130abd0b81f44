#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace rtsf {

// A univariate series. Values are unitless once normalized; name/freq are
// carried along for reports only.
struct TimeSeries {
    std::vector<double> values;
    std::string name;
    std::string freq;

    std::size_t size() const { return values.size(); }
};

// Throws std::invalid_argument unless the series has length >= 2 and every
// value is finite.
void check_series(const TimeSeries& ts);

struct NormParams {
    double mean = 0.0;
    double std = 1.0;
};

struct WindowConfig {
    std::size_t input_len = 16; // K
    std::size_t horizon = 1;    // O
    std::size_t stride = 1;
};

// Supervised windows stored flat, row-major. Window n covers source indices
// [n*stride, n*stride + K) and its label covers the O points that follow.
struct SupervisedDataset {
    std::size_t input_len = 0;
    std::size_t horizon = 0;
    std::size_t stride = 1;
    std::vector<double> inputs; // size() * input_len
    std::vector<double> labels; // size() * horizon
    // Optional ground-truth anomaly flags aligned to the parent series
    // (empty when unknown).
    std::vector<std::uint8_t> source_mask;

    std::size_t size() const { return input_len ? inputs.size() / input_len : 0; }
    std::span<const double> input(std::size_t n) const {
        return {inputs.data() + n * input_len, input_len};
    }
    std::span<double> input(std::size_t n) {
        return {inputs.data() + n * input_len, input_len};
    }
    std::span<const double> label(std::size_t n) const {
        return {labels.data() + n * horizon, horizon};
    }
    std::span<double> label(std::size_t n) {
        return {labels.data() + n * horizon, horizon};
    }
    // True when the parent-series point at window-n offset k is flagged.
    bool input_flag(std::size_t n, std::size_t k) const {
        return !source_mask.empty() && source_mask[n * stride + k] != 0;
    }
};

// CSV ingestion: UTF-8, optional single header row, one value per row in the
// selected column, decimal-point floats. The column selector is either a
// 0-based index ("2") or a header name ("value").
TimeSeries load_csv(const std::string& path, const std::string& column);

// Zero-mean unit-std rescaling with population std (divide by N).
// Throws on (near-)constant input.
std::pair<TimeSeries, NormParams> normalize(const TimeSeries& ts);

// v -> (v - mean) / std. Used to scale a test split with the train split's
// parameters.
TimeSeries apply_norm(const TimeSeries& ts, const NormParams& p);

// v -> v * std + mean.
TimeSeries invert_norm(const TimeSeries& ts, const NormParams& p);

// Chronological split: first floor(fraction * T) points, then the rest.
std::pair<TimeSeries, TimeSeries> split(const TimeSeries& ts, double train_fraction);

// Maximal sliding windows for the stride; throws when the series is too
// short for a single window. source_mask, when given, must align with ts.
SupervisedDataset window(const TimeSeries& ts, const WindowConfig& cfg,
                         std::vector<std::uint8_t> source_mask = {});

// Mean absolute / squared error over flattened matching shapes.
double mae(std::span<const double> preds, std::span<const double> targets);
double mse(std::span<const double> preds, std::span<const double> targets);

} // namespace rtsf
