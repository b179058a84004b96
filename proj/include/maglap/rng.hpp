#pragma once

#include <cstdint>
#include <random>

namespace maglap {

/// Mixing finalizer of SplitMix64 (Steele, Lea, Flood 2014).
inline std::uint64_t splitmix64_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Child seed `index` derived from `seed`. Children are the consecutive outputs
/// of SplitMix64 seeded with the parent, so independent streams (per block, per
/// probe, per realization) stay reproducible when work is distributed.
inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64_mix(seed + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

/// Deterministic random stream: std::mt19937_64 (output sequence fixed by the
/// standard) with hand-rolled bounded/uniform draws so results do not depend on
/// the standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform in [0, 1) with 53 random mantissa bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound); unbiased via rejection.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        std::uint64_t r;
        do {
            r = next_u64();
        } while (r >= limit);
        return r % bound;
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace maglap
