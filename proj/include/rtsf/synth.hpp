#pragma once

#include "rtsf/series.hpp"

#include <cstdint>
#include <string>

namespace rtsf {

// Seeded synthetic generators, normalized to zero mean and unit std before
// returning. "sine" is sin(2 pi t / 64) plus white noise of std 0.05;
// "sine_trend" adds a linear drift of two amplitudes over the full length.
TimeSeries synth_series(const std::string& name, std::size_t length, std::uint64_t seed);

} // namespace rtsf
