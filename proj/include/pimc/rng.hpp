#ifndef PIMC_RNG_HPP
#define PIMC_RNG_HPP

#include <array>
#include <cstdint>
#include <string_view>

namespace pimc {

// Every random number in a run comes from one xoshiro256** stream per chain,
// seeded through splitmix64. Both algorithms are fully specified by their
// published reference implementations, so identical seeds give identical
// streams on every platform -- std::uniform_real_distribution makes no such
// promise, which is why it is not used here.

inline constexpr std::string_view kRngAlgorithm = "xoshiro256**";
inline constexpr std::string_view kRngVersion = "1.0";
inline constexpr std::string_view kRngSeeding = "splitmix64";

/// splitmix64 step; used to expand a 64-bit seed into generator state.
struct SplitMix64 {
    std::uint64_t state;

    explicit constexpr SplitMix64(std::uint64_t seed) : state(seed) {}

    constexpr std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

/// xoshiro256** 1.0 (Blackman & Vigna). 64-bit output, period 2^256 - 1.
class Xoshiro256StarStar {
  public:
    explicit constexpr Xoshiro256StarStar(std::uint64_t seed) : s_{} {
        SplitMix64 sm(seed);
        for (auto& w : s_) w = sm.next();
    }

    constexpr std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Symmetric uniform in [-halfwidth, halfwidth).
    double symmetric(double halfwidth) { return halfwidth * (2.0 * uniform01() - 1.0); }

    const std::array<std::uint64_t, 4>& state() const { return s_; }

  private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> s_;
};

using Rng = Xoshiro256StarStar;

}  // namespace pimc

#endif
