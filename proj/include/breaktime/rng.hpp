#pragma once

#include <cmath>
#include <cstdint>

namespace breaktime {

// Deterministic xoshiro256++ generator with cheap independent substreams.
//
// RandomState(seed, stream) derives the initial state by running a
// splitmix64 finalizer chain over (seed, stream), so distinct stream
// indices under one root seed give statistically independent sequences.
// Identical (seed, stream) and call order reproduce identical values
// bit for bit on every run and at every worker count.
class RandomState {
public:
    explicit RandomState(std::uint64_t seed) : RandomState(seed, 0) {}

    RandomState(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t x = mix64(seed) ^ (mix64(stream + 0x9E3779B97F4A7C15ULL) + 0x7F4A7C15ULL);
        for (auto& word : state_) {
            x += 0x9E3779B97F4A7C15ULL;
            word = mix64(x);
        }
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform on [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on (0, 1]; safe to pass to log().
    double uniform_positive() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    // Box-Muller; consumes exactly two draws per call.
    double standard_normal() {
        const double u1 = uniform_positive();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    // splitmix64 output finalizer
    static std::uint64_t mix64(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_[4];
};

}  // namespace breaktime
