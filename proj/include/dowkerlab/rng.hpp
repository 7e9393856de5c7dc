#ifndef DOWKERLAB_RNG_HPP
#define DOWKERLAB_RNG_HPP

#include <cstdint>
#include <random>

namespace dowkerlab {

/// Seeded random stream. Identical (seed, stream_id) pairs reproduce identical
/// draw sequences; distinct stream_ids give statistically independent streams
/// (one logical stream per replication).
class RngStream {
  public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id = 0)
        : engine_(mix(mix(seed) ^ mix(stream_id + 0x9e3779b97f4a7c15ull))) {}

    std::mt19937_64& engine() { return engine_; }

    /// Uniform in (0, 1].
    double uniform01() {
        return ((engine_() >> 11) + 1) * 0x1.0p-53;
    }

    /// Uniform in [a, b).
    double uniform(double a, double b) {
        return a + (b - a) * ((engine_() >> 11) * 0x1.0p-53);
    }

    long long poisson(double mean) {
        if (mean <= 0.0) return 0;
        std::poisson_distribution<long long> d(mean);
        return d(engine_);
    }

    /// Standard exponential.
    double exponential() { return -std::log(uniform01()); }

  private:
    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }

    std::mt19937_64 engine_;
};

}  // namespace dowkerlab

#endif
