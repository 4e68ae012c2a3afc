#pragma once

#include <cstdint>

namespace bmo {

/// SplitMix64 (Steele, Lea, Flood). Used to expand a 64-bit seed into
/// generator state and to derive independent streams.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();

private:
    std::uint64_t state_;
};

/// Named RNG streams. Each consumer of randomness within a run draws from
/// its own stream so that, e.g., enabling sensor noise never perturbs the
/// selection draws.
enum class Stream : std::uint64_t {
    init = 0x1,
    selection = 0x2,
    sensor = 0x3,
};

/// xoshiro256** 1.0 (Blackman, Vigna). Portable, bit-exact on every platform.
class Rng {
public:
    Rng(std::uint64_t seed, Stream stream);
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform();

    /// Uniform double in (0, 1].
    double uniform_open_low();

    /// Standard normal deviate (Marsaglia polar method, one cached spare).
    double normal();

private:
    std::uint64_t s_[4];
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace bmo
