#include "rtsf/synth.hpp"

#include "rtsf/rng.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace rtsf {

TimeSeries synth_series(const std::string& name, std::size_t length, std::uint64_t seed) {
    if (length < 64) throw std::invalid_argument("synthetic series need length >= 64");
    const bool with_drift = name == "sine_trend";
    if (!with_drift && name != "sine")
        throw std::invalid_argument("unknown synthetic generator: " + name);

    constexpr double period = 64.0;
    constexpr double noise_std = 0.05;
    auto g = rng::make_stream(seed, rng::Stream::synth_noise);
    std::normal_distribution<double> noise(0.0, noise_std);

    TimeSeries ts;
    ts.name = name;
    ts.values.resize(length);
    for (std::size_t t = 0; t < length; ++t) {
        double v = std::sin(2.0 * std::numbers::pi * static_cast<double>(t) / period);
        if (with_drift) v += 2.0 * static_cast<double>(t) / static_cast<double>(length);
        ts.values[t] = v + noise(g);
    }
    return normalize(ts).first;
}

} // namespace rtsf
