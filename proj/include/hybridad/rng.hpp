#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace hybridad {

/// Deterministic pseudo-random stream. All stochastic code in the library
/// draws from one of these, so a run is fully reproducible from its seed.
/// The distribution transforms are written out here instead of using
/// <random> distribution objects, which keep hidden state and are free to
/// differ between standard library implementations.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform draw from [0, 1).
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform draw from [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform draw from {0, ..., n-1}. Rejection sampling, no modulo bias.
    std::uint64_t uniform_below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % n;
    }

    bool bernoulli(double p) { return uniform01() < p; }

    /// Standard normal via Box-Muller. Stateless: the second value of the
    /// pair is discarded so consecutive draws never depend on caching.
    double normal() {
        const double u1 = 1.0 - uniform01(); // (0, 1], keeps log finite
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    /// Derive an independent stream from this stream's seed and a salt.
    /// Depends only on (seed, salt), not on how much has been drawn.
    RngStream fork(std::uint64_t salt) const {
        return RngStream(mix(seed_ ^ (salt + 0x9e3779b97f4a7c15ULL)));
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        // splitmix64 finalizer
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

} // namespace hybridad
