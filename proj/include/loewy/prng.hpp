#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace loewy {

// splitmix64; used both as a generator and to derive per-task streams.
struct Rng {
    uint64_t state = 0x9e3779b97f4a7c15ULL;

    explicit Rng(uint64_t seed) : state(seed ^ 0x9e3779b97f4a7c15ULL) {}

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, n)
    uint64_t below(uint64_t n) { return n ? next() % n : 0; }

    uint32_t trit() { return static_cast<uint32_t>(next() % 3); }
};

// Deterministic stream split: grind the label into the seed.
inline uint64_t derive_seed(uint64_t master, std::string_view label) {
    uint64_t h = master ^ 0xcbf29ce484222325ULL;
    for (char c : label) {
        h ^= static_cast<uint8_t>(c);
        h *= 0x100000001b3ULL;
    }
    Rng r(h);
    r.next();
    return r.next();
}

} // namespace loewy
