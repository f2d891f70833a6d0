#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace qrg {

// Deterministic random source used by every stochastic routine in the
// library. The generator is std::mt19937_64; floating-point draws are
// derived from raw 64-bit words with fixed arithmetic (no
// std::uniform_real_distribution / std::normal_distribution, whose output
// is implementation-defined), so a seed reproduces the same stream on any
// platform:
//
//   uniform():       (u64 >> 11) * 2^-53                 in [0, 1)
//   uniform_open():  ((u64 >> 11) + 0.5) * 2^-53         in (0, 1)
//   gaussian():      Box-Muller, sqrt(-2 ln u1) * cos(2 pi u2),
//                    two uniform_open() draws per call, no caching.
//
// Substreams for independent work items (seesaw restarts, sweep grid
// points) come from stream(k): the child seed is
// splitmix64(seed ^ (k + 1) * 0x9E3779B97F4A7C15).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return engine_(); }

    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform_open() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double gaussian() {
        const double u1 = uniform_open();
        const double u2 = uniform_open();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(6.283185307179586476925286766559 * u2);
    }

    // Integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

    Rng stream(std::uint64_t k) const {
        return Rng(splitmix64(seed_ ^ ((k + 1) * 0x9E3779B97F4A7C15ULL)));
    }

    static std::uint64_t splitmix64(std::uint64_t x) {
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

  private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

} // namespace qrg
