#pragma once

#include <cmath>
#include <cstdint>

namespace grainstat::rng {

// splitmix64 finalizer (Steele, Lea, Flood 2014).  Used for seed expansion
// and for deriving independent per-stream seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Derives the seed for stream `stream` of a run seeded with `base`.  Streams
// are used for per-trial generators so trials can run in any order (or in
// parallel) and still reproduce bit-identically.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    std::uint64_t s = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
    return splitmix64(s);
}

// xoshiro256** 1.0 (Blackman, Vigna 2018).  Fixed algorithm so identical
// seeds give identical pixel streams on every platform, unlike the
// standard-library distributions.
class Xoshiro256ss {
public:
    explicit Xoshiro256ss(std::uint64_t seed) {
        for (auto& w : s_)
            w = splitmix64(seed);
    }

    std::uint64_t next() {
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

    // Uniform double in [0, 1), 53 significant bits.
    double uniform() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, bound) by 64-bit multiply-shift; bias is
    // below 2^-32 for the small bounds used here (<= 256).
    std::uint32_t below(std::uint32_t bound) {
        return static_cast<std::uint32_t>(
            (static_cast<unsigned __int128>(next()) * bound) >> 64);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t s_[4];
};

// Number of failures before the next success in a Bernoulli(p) sequence.
// Sampling successes by geometric gaps visits only the success positions,
// which keeps sparse image generation O(count) instead of O(pixels).
inline std::uint64_t geometric_skip(Xoshiro256ss& g, double p,
                                    std::uint64_t limit) {
    if (p >= 1.0)
        return 0;
    if (p <= 0.0)
        return limit;
    const double u = g.uniform();
    const double skip = std::floor(std::log1p(-u) / std::log1p(-p));
    if (!(skip < static_cast<double>(limit)))
        return limit;
    return static_cast<std::uint64_t>(skip);
}

} // namespace grainstat::rng
