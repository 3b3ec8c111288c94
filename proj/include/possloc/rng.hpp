#pragma once

#include <cstdint>

namespace possloc {

// splitmix64: tiny, deterministic across platforms (the standard library's
// distributions are not), good enough for seeding test corpora.
struct SplitMix64 {
    uint64_t state = 0;

    explicit SplitMix64(uint64_t seed = 0) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    // Uniform in [0, n) by rejection-free modulo (bias negligible for small n).
    uint64_t below(uint64_t n) { return next() % n; }
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    bool next_bool() { return next() & 1; }
};

}  // namespace possloc
