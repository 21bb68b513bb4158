#pragma once

#include <cstdint>

namespace kpm {

// Deterministic 64-bit generator (splitmix64).  All seeded generation in the
// project flows through this one algorithm so instances and reports are
// reproducible bit for bit; the exact update is documented in the README.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform draw from [0, bound) by rejection sampling.
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        std::uint64_t limit = ~0ULL - (~0ULL % bound);
        std::uint64_t x;
        do { x = next(); } while (x >= limit);
        return x % bound;
    }
};

}  // namespace kpm
