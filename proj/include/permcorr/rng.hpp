#pragma once

#include <cstdint>
#include <vector>

namespace permcorr::rng {

// Counter-based pseudo-randomness. Every consumer derives an independent
// SplitMix64 stream from (seed, counter), so the value produced for draw t
// depends only on (seed, t) and never on execution order or worker count.
//
// Bit-exact contract (documented in the README):
//   stream(seed, t)  = SplitMix64 with initial state  seed + t * 0xD1B54A32D192ED03
//   next()           = standard SplitMix64 step (Steele, Lea, Flood 2014)
//   bounded(x, m)    = floor(x * m / 2^64)  (high 64 bits of the 128-bit product)
//   to_unit_open(x)  = ((x >> 11) + 0.5) * 2^-53, a double in (0, 1)
//   normal(g)        = sqrt(-2 ln u1) * cos(2 pi u2) with u1, u2 = to_unit_open(g.next())

inline constexpr std::uint64_t kStreamStep = 0xD1B54A32D192ED03ULL;

class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t state) : state_(state) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

inline SplitMix64 stream(std::uint64_t seed, std::uint64_t counter) {
    return SplitMix64(seed + counter * kStreamStep);
}

// Derives a sub-seed; used to key independent data streams off one user seed.
inline std::uint64_t fold(std::uint64_t seed, std::uint64_t value) {
    return SplitMix64(seed + value * kStreamStep).next();
}

// Uniform integer in [0, m) without modulo (Lemire multiply-shift).
inline std::uint64_t bounded(std::uint64_t x, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * m) >> 64);
}

inline double to_unit_open(std::uint64_t x) {
    return (static_cast<double>(x >> 11) + 0.5) * 0x1p-53;
}

double standard_normal(SplitMix64& g);

// Fisher-Yates shuffle of the identity, consuming n-1 values from g.
void fill_random_permutation(std::vector<int>& perm, SplitMix64& g);

} // namespace permcorr::rng
