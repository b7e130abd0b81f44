#pragma once

#include <cstdint>
#include <random>

namespace rtsf::rng {

// splitmix64 (Steele, Lea, Flood 2014). Used only to derive stream seeds:
// every stochastic operation draws from its own mt19937_64 seeded by
// mix(user_seed, stream_tag), so adding a new operation never perturbs the
// draws of existing ones.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t mix(std::uint64_t seed, std::uint64_t tag) {
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64(s);
    s ^= tag * 0x2545f4914f6cdd1dULL;
    std::uint64_t b = splitmix64(s);
    return a ^ (b + 0x632be59bd9b4e019ULL);
}

// Stream tags, one per stochastic operation.
enum class Stream : std::uint64_t {
    point_inject = 1,
    label_inject = 2,
    positional_inject = 3,
    subsequence_inject = 4,
    model_init = 5,
    shuffle = 6,
    synth_noise = 7,
    probe_risk = 8,
    probe_gaussian = 9,
};

inline std::mt19937_64 make_stream(std::uint64_t seed, Stream tag) {
    return std::mt19937_64(mix(seed, static_cast<std::uint64_t>(tag)));
}

// Per-epoch shuffle stream: derived from (seed, epoch) so epoch e's batch
// order is independent of how many epochs ran before it.
inline std::mt19937_64 make_epoch_stream(std::uint64_t seed, std::uint64_t epoch) {
    return std::mt19937_64(mix(mix(seed, static_cast<std::uint64_t>(Stream::shuffle)), epoch));
}

} // namespace rtsf::rng
