#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace coindex {

/// SplitMix64 pseudo-random generator. The state advances by the 64-bit
/// golden-ratio constant and each output is the finalizing mix from
/// Steele, Lea and Flood's SplittableRandom, so a given seed yields the
/// same stream on every platform. Used for all randomized experiments to
/// keep them reproducible.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

    /// Output mix applied to an advanced state word.
    static constexpr std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    /// Uniform double in [0, 1): the top 53 bits of the next word.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in (0, 1]; safe as a log() argument.
    double next_unit_positive() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    /// Uniform double in [-amplitude, amplitude].
    double next_symmetric(double amplitude) {
        return amplitude * (2.0 * next_unit() - 1.0);
    }

    /// Seed of the index-th derived child stream. Children are the
    /// successive outputs of a generator seeded with `seed`, so a family
    /// of streams can be consumed independently and in any order.
    static std::uint64_t child_seed(std::uint64_t seed, std::uint64_t index) {
        return mix(seed + (index + 1) * 0x9E3779B97F4A7C15ULL);
    }

private:
    std::uint64_t state_;
};

/// Two independent standard normal draws produced by one Box-Muller
/// transform. Consumes exactly two generator words.
struct NormalPair {
    double z0;
    double z1;
};

inline NormalPair next_normal_pair(SplitMix64& rng) {
    const double u1 = rng.next_unit_positive();
    const double u2 = rng.next_unit();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

}  // namespace coindex
