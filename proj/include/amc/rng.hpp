#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace amc {

// Deterministic random number plumbing.
//
// Every random stream in the toolkit is an independent substream derived
// from a user-visible 64-bit seed plus a list of integer "salt" words
// (experiment kind, axis index, class index, trial index, transmitter
// index, ...).  Derivation uses SplitMix64-style avalanche mixing; the
// generator itself is xoshiro256++, which passes BigCrush and PractRand.
// Floating-point draws (uniform, Gaussian via Box-Muller) are built by
// hand from the integer stream so that results are bit-identical across
// platforms and standard-library versions.

/// SplitMix64 finalizer: full-avalanche 64-bit scrambling.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Derive an independent substream seed from a base seed and salt words.
/// Order-sensitive: derive(s, {a, b}) != derive(s, {b, a}) in general.
constexpr std::uint64_t derive_seed(std::uint64_t seed,
                                    std::initializer_list<std::uint64_t> words) {
    constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
    std::uint64_t s = mix64(seed + kGolden);
    for (std::uint64_t w : words) s = mix64(s + kGolden + w);
    return s;
}

// Salt words for the fixed substream layers.  Keep these stable: changing
// them changes every simulated stream.
inline constexpr std::uint64_t kSaltScenario = 0x01;  // trial seed -> scenario seed
inline constexpr std::uint64_t kSaltSymbols = 0x02;   // scenario seed + tx index -> symbols
inline constexpr std::uint64_t kSaltNoise = 0x03;     // scenario seed -> additive noise
inline constexpr std::uint64_t kSaltEpsilon = 0x04;   // trial seed -> sync-error draws
inline constexpr std::uint64_t kSaltMonteCarlo = 0x05; // sensitivity MC draws

/// xoshiro256++ by Blackman & Vigna; state seeded via SplitMix64.
class Xoshiro256pp {
public:
    explicit Xoshiro256pp(std::uint64_t seed) {
        // Recommended initialization: fill state with SplitMix64 outputs.
        std::uint64_t sm = seed;
        for (auto& word : state_) {
            sm += 0x9E3779B97F4A7C15ULL;
            word = mix64(sm);
        }
    }

    std::uint64_t next() {
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

    /// Uniform in [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Unbiased integer in [0, n); Lemire's multiply-shift with rejection.
    std::uint64_t uniform_index(std::uint64_t n) {
        std::uint64_t x = next();
        __uint128_t m = static_cast<__uint128_t>(x) * n;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < n) {
            const std::uint64_t threshold = (0 - n) % n;
            while (lo < threshold) {
                x = next();
                m = static_cast<__uint128_t>(x) * n;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    /// One standard-normal pair via Box-Muller (u1 kept in (0,1] so the log
    /// is finite).
    void normal_pair(double& z0, double& z1) {
        const double u1 = (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = static_cast<double>(next() >> 11) * 0x1.0p-53;
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * M_PI * u2;
        z0 = r * std::cos(a);
        z1 = r * std::sin(a);
    }

    /// Single standard-normal draw (discards the pair's second half).
    double normal() {
        double z0, z1;
        normal_pair(z0, z1);
        return z0;
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t state_[4];
};

} // namespace amc
