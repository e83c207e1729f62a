#pragma once

#include <cstdint>
#include <string_view>

namespace carnot {

/// Counter-based random stream. Every draw is a pure function of
/// (key, counter), so parallel consumers can partition the counter space
/// deterministically. Streams are derived from a single 64-bit seed and a
/// label; no global state, no wall clock.
class Rng {
public:
    Rng() : key_(0) {}
    explicit Rng(uint64_t key) : key_(key) {}

    static Rng derive(uint64_t seed, std::string_view label) {
        uint64_t h = 0xcbf29ce484222325ull; // FNV-1a over the label
        for (char c : label) {
            h ^= static_cast<unsigned char>(c);
            h *= 0x100000001b3ull;
        }
        return Rng(mix(mix(seed) ^ h));
    }

    /// Independent substream, e.g. one per scenario or per sample block.
    Rng child(uint64_t i) const { return Rng(mix(key_ ^ mix(i + 0x9e3779b97f4a7c15ull))); }

    /// Uniform double in [0,1) for the given counter.
    double u01(uint64_t ctr) const {
        return static_cast<double>(mix(key_ ^ (ctr * 0x9e3779b97f4a7c15ull)) >> 11) * 0x1.0p-53;
    }

    double uniform(uint64_t ctr, double lo, double hi) const {
        return lo + (hi - lo) * u01(ctr);
    }

    uint64_t key() const { return key_; }

private:
    static uint64_t mix(uint64_t z) {
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    uint64_t key_;
};

} // namespace carnot
