#pragma once

#include <cstdint>

namespace bmmcfg {

// splitmix64: used only to expand a user seed into generator state and to
// derive independent per-trial seeds from a single top-level seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// xorshift64* (Vigna 2016). Fixed, portable generator: the same seed yields
// the same stream on every platform, which all seeded tests rely on.
class Xorshift64Star {
public:
    explicit Xorshift64Star(std::uint64_t seed) {
        std::uint64_t s = seed;
        state_ = splitmix64(s);
        if (state_ == 0) state_ = 0x9e3779b97f4a7c15ULL;
    }

    std::uint64_t next() {
        std::uint64_t x = state_;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        state_ = x;
        return x * 0x2545f4914f6cdd1dULL;
    }

    // Uniform double in [0, 1) from the top 53 bits.
    double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [lo, hi] by rejection-free modulo (bias is
    // negligible for the small ranges used here).
    std::uint64_t next_in(std::uint64_t lo, std::uint64_t hi) {
        return lo + next() % (hi - lo + 1);
    }

private:
    std::uint64_t state_;
};

// Derives the seed for trial `index` from a top-level seed.
inline std::uint64_t derive_seed(std::uint64_t top_seed, std::uint64_t index) {
    std::uint64_t s = top_seed + 0x6a09e667f3bcc909ULL * (index + 1);
    return splitmix64(s);
}

}  // namespace bmmcfg
