#pragma once

#include <cmath>
#include <cstdint>

namespace muibfd {

// Counter-based random numbers: every draw is a pure function of (seed, counter),
// so parallel evaluation and reruns produce identical streams on any platform.
// std:: distributions are implementation-defined and would break the byte-level
// determinism contract of the CLI outputs.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Uniform double in (0, 1], derived from (seed, counter).
inline double uniform01(std::uint64_t seed, std::uint64_t counter) {
    const std::uint64_t bits = splitmix64(splitmix64(seed) ^ counter * 0xd1342543de82ef95ULL);
    // 53 mantissa bits; map 0 to 2^-53 so log() below stays finite.
    const double u = static_cast<double>(bits >> 11) * 0x1.0p-53;
    return u > 0.0 ? u : 0x1.0p-53;
}

struct GaussPair {
    double first;
    double second;
};

/// Two independent standard normal draws (Box-Muller) for (seed, counter).
inline GaussPair gauss_pair(std::uint64_t seed, std::uint64_t counter) {
    const double u1 = uniform01(seed, 2 * counter);
    const double u2 = uniform01(seed, 2 * counter + 1);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * 3.14159265358979323846 * u2;
    return {r * std::cos(t), r * std::sin(t)};
}

} // namespace muibfd
