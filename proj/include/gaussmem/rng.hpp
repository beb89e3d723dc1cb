#pragma once

#include <cstdint>

namespace gaussmem {

// splitmix64: small deterministic generator used wherever reproducibility
// across platforms matters (std:: distributions are not portable bit-for-bit).
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform double in [0, 1)
    double canonical() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * canonical(); }

    // uniform integer in [lo, hi] inclusive
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

}  // namespace gaussmem
