#ifndef CUTFORGE_RNG_HPP
#define CUTFORGE_RNG_HPP

#include <cstdint>

namespace cutforge {

// splitmix64; pinned implementation so seeded streams are identical across
// platforms and standard libraries.
struct SplitMix64 {
    uint64_t state = 0;

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Unbiased draw from [0, bound) by rejection.
    uint64_t below(uint64_t bound) {
        uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    /// Exact Bernoulli(num/den) draw.
    bool bernoulli(uint64_t num, uint64_t den) { return below(den) < num; }
};

}  // namespace cutforge

#endif
