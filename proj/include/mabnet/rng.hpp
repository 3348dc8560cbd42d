#pragma once

#include <cmath>
#include <cstdint>

// Seeded randomness for deterministic, replayable simulations.
//
// Every source of randomness in an episode is a named stream whose seed is
// derived from (base seed, run index, stream label [, agent index]).  Streams
// never share state, so changing how one stream is consumed (e.g. a different
// tie-break pattern) cannot perturb the others.  Rewards are additionally
// addressed by (round, arm): the realization X_i^t is a pure function of the
// reward-stream seed, t and i, independent of which arms anyone pulled.

namespace mabnet {

inline constexpr std::uint64_t kGolden64 = 0x9E3779B97F4A7C15ULL;

/// SplitMix64 finalizer (Stafford mix13). Bijective on 64-bit words.
inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += kGolden64;
    return mix64(state);
}

/// Folds one label/index word into a seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t word) {
    return mix64(seed + kGolden64 * (word + 1));
}

template <typename... Rest>
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t word, Rest... rest) {
    return derive_seed(derive_seed(seed, word), rest...);
}

// Stream labels used by the simulator.
namespace streams {
inline constexpr std::uint64_t rewards = 1;
inline constexpr std::uint64_t masks = 2;
inline constexpr std::uint64_t tie_breaks = 3;
}  // namespace streams

/// xoshiro256++ generator, seeded via SplitMix64.  Copyable value type:
/// cloning an Rng replays the exact same draw sequence from the clone point.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64_next(sm);
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

    /// Uniform double in [0, 1), 53-bit resolution.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in (0, 1]; safe as a log() argument.
    double next_unit_open() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    bool next_bernoulli(double p) { return next_unit() < p; }

    /// Gaussian via Box-Muller. Always consumes exactly two uniforms.
    double next_gaussian(double mean, double stddev) {
        const double u1 = next_unit_open();
        const double u2 = next_unit();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        return mean + stddev * radius * std::cos(kTwoPi * u2);
    }

    /// Uniform integer in [0, n), n >= 1.  Unbiased via rejection.
    std::uint64_t next_below(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

private:
    static constexpr double kTwoPi = 6.283185307179586476925286766559;

    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

/// One Gaussian sample addressed by (stream seed, a, b) rather than by draw
/// order.  Used for per-(round, arm) reward realizations.
inline double gaussian_at(std::uint64_t stream_seed, std::uint64_t a, std::uint64_t b,
                          double mean, double stddev) {
    Rng rng(derive_seed(stream_seed, a, b));
    return rng.next_gaussian(mean, stddev);
}

}  // namespace mabnet
