#pragma once

#include <cstdint>

namespace fringe {

using Seed = std::uint64_t;

// Fixed-increment SplitMix64. Small state, seedable, and cheap to split
// into independent streams; every sampler in this library draws from it.
class SplitMix64 {
public:
    explicit SplitMix64(Seed seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Unbiased draw from {0, ..., bound-1} by rejection.
    std::uint64_t below(std::uint64_t bound) {
        std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    // Stream for trial `index` of an experiment keyed by `base`. Trials drawn
    // from derived streams are independent of scheduling order.
    static Seed derive(Seed base, std::uint64_t index) {
        std::uint64_t z = base ^ (0xD1B54A32D192ED03ull * (index + 1));
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

}  // namespace fringe
