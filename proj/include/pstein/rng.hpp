#pragma once

#include <cstdint>
#include <random>

namespace pstein {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic substream derivation: every replicate/worker gets its own
// generator from (seed, stream), so thread count never changes the draw
// sequence any single replicate sees.
inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64(s);
    s ^= 0xd1342543de82ef95ULL * (stream + 1);
    std::uint64_t b = splitmix64(s);
    std::uint64_t c = splitmix64(s);
    return std::mt19937_64(a ^ b ^ (c << 1));
}

// Uniform on (0,1); never returns 0 or 1.
inline double uniform01(std::mt19937_64& g) {
    return (static_cast<double>(g() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
}

inline double uniform_in(std::mt19937_64& g, double lo, double hi) {
    return lo + (hi - lo) * uniform01(g);
}

// Standard normal via the polar method. Discards the spare value so calls
// stay position-independent in the stream.
double standard_normal(std::mt19937_64& g);

// Poisson count: inversion for mean <= 30, PTRD transformed rejection above.
// Implemented in-house so sequences are reproducible across platforms.
long poisson_count(double mean, std::mt19937_64& g);

} // namespace pstein
