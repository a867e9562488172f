#ifndef BECGROWTH_RNG_HPP
#define BECGROWTH_RNG_HPP

// =====================================================================
//  becgrowth/rng.hpp
//
//  Seedable random streams with bit-stable output.
//
//  The engine is std::mt19937_64, whose sequence is pinned by the C++
//  standard, so identical seeds give identical streams on every
//  platform.  The standard library's *_distribution adaptors are NOT
//  pinned, so all variate transforms are written out here explicitly:
//
//    uniform:      u = ((x >> 11) + 1) * 2^-53   in (0, 1]
//    exponential:  -ln(u) / rate                 (inverse transform)
//    normal:       Box-Muller pair, spare cached
//
//  Per-trajectory streams are derived from (master_seed, stream_index)
//  with one splitmix64 mix of master + index * golden gamma; streams
//  are therefore O(1) to construct and independent of each other for
//  any practical index range.  Byte-identical outputs for identical
//  (command, seed) pairs rest on this file.
// =====================================================================

#include <cmath>
#include <cstdint>
#include <random>

namespace becgrowth {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master + index * 0x9E3779B97F4A7C15ull);
}

class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}
    RandomStream(std::uint64_t master, std::uint64_t index)
        : engine_(stream_seed(master, index)) {}

    // uniform in (0, 1]; never 0, so log(u) is always finite
    double uniform() {
        const std::uint64_t x = engine_();
        return static_cast<double>((x >> 11) + 1) * 0x1.0p-53;
    }

    double exponential(double rate) { return -std::log(uniform()) / rate; }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    std::uint64_t raw() { return engine_(); }

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace becgrowth

#endif  // BECGROWTH_RNG_HPP
