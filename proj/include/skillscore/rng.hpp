#ifndef SKILLSCORE_RNG_HPP
#define SKILLSCORE_RNG_HPP

#include <cstdint>

namespace skillscore {

// splitmix64 output mix (Steele, Lea & Flood).
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Deterministic, platform-independent random stream (splitmix64).
// We avoid <random> distributions on purpose: their output is not specified
// by the standard, and bit-exact reproducibility across runs and thread
// counts is part of the bootstrap contract.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        return mix64(state_);
    }

    // Uniform on [0, 1): top 53 bits of a draw.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform on (0, 1), both endpoints excluded. Safe input for a normal
    // quantile transform.
    double uniform01_open() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Unbiased uniform draw from {0, 1, ..., bound-1} by rejection.
    std::uint64_t uniform_below(std::uint64_t bound) {
        // reject the low residue so that x % bound is exactly uniform
        const std::uint64_t limit = (0 - bound) % bound;  // 2^64 mod bound
        std::uint64_t x = next_u64();
        while (x < limit) x = next_u64();
        return x % bound;
    }

    // Standard normal draw via the quantile transform (see statmath.hpp).
    double gaussian();

private:
    std::uint64_t state_;
};

// Seed for substream `index` of a master seed. Counter-based: substreams can
// be created in any order, on any thread, and always agree. The mixing
// function is the splitmix64 finalizer applied to master + (index+1)*gamma.
inline std::uint64_t substream_seed(std::uint64_t master_seed, std::uint64_t index) {
    return mix64(master_seed + (index + 1) * 0x9E3779B97F4A7C15ull);
}

}  // namespace skillscore

#endif  // SKILLSCORE_RNG_HPP
