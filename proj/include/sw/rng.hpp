#pragma once

#include <cmath>
#include <cstdint>

// Counter-based random streams. Every draw is a pure function of
// (key, counter), so parallel consumers produce identical values
// regardless of scheduling.

namespace sw::rng {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// splitmix64 finalizer; bijective on 64-bit words.
inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

// counter-th output of the splitmix64 sequence seeded with key.
inline std::uint64_t at(std::uint64_t key, std::uint64_t counter) {
    return mix64(key + (counter + 1) * kGolden);
}

// Derive an independent substream key.
inline std::uint64_t derive(std::uint64_t key, std::uint64_t tag) {
    return mix64(at(key, tag) ^ kGolden);
}

// Uniform in (0,1); never returns an exact endpoint.
inline double uniform01(std::uint64_t key, std::uint64_t counter) {
    return (static_cast<double>(at(key, counter) >> 11) + 0.5) * 0x1.0p-53;
}

// One Box-Muller pair from counters (2c, 2c+1).
inline void gaussian_pair(std::uint64_t key, std::uint64_t counter, double& g0, double& g1) {
    const double u1 = uniform01(key, 2 * counter);
    const double u2 = uniform01(key, 2 * counter + 1);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    g0 = r * std::cos(a);
    g1 = r * std::sin(a);
}

inline double gaussian(std::uint64_t key, std::uint64_t counter) {
    double g0, g1;
    gaussian_pair(key, counter, g0, g1);
    return g0;
}

} // namespace sw::rng
