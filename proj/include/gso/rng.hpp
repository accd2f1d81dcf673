#pragma once

#include <cstdint>
#include <random>

namespace gso {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Decorrelates structured seed schedules (e.g. base, base+1, ...) and derives
// named substreams from one base seed.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream) {
    std::uint64_t x = base ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
    return splitmix64(x);
}

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

inline Rng stream_rng(std::uint64_t base, std::uint64_t stream) {
    return Rng(mix_seed(base, stream));
}

inline double draw_uniform(Rng& rng) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

inline double draw_normal(Rng& rng, double mean = 0.0, double sd = 1.0) {
    return std::normal_distribution<double>(mean, sd)(rng);
}

// Shape-rate parameterization throughout.
inline double draw_gamma(Rng& rng, double shape, double rate) {
    return std::gamma_distribution<double>(shape, 1.0 / rate)(rng);
}

inline double draw_beta(Rng& rng, double a, double b) {
    const double x = std::gamma_distribution<double>(a, 1.0)(rng);
    const double y = std::gamma_distribution<double>(b, 1.0)(rng);
    return x / (x + y);
}

inline int draw_int(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

}  // namespace gso
