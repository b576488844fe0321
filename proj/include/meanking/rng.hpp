#pragma once

// Counter-splittable deterministic randomness for sampled protocol runs.
// splitmix64 is tiny and byte-identical across platforms, which the
// reproducible-output contract of the CLI needs; std::uniform_real_distribution
// is not guaranteed that.

#include <cstdint>

namespace meanking {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 bits of entropy.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Independent stream for round `counter` of a run seeded with `seed`.
    static SplitMix64 split(std::uint64_t seed, std::uint64_t counter) {
        SplitMix64 mixer(seed ^ (counter * 0xda942042e4dd58b5ULL));
        return SplitMix64(mixer.next());
    }

private:
    std::uint64_t state_;
};

}  // namespace meanking
