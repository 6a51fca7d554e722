#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

namespace fsel {

// All randomness in the library goes through mt19937_64 plus the helpers
// below. The standard pins the mt19937_64 output sequence, and the helpers
// avoid std::*_distribution (whose output is implementation-defined), so a
// seed reproduces the same stream on every platform.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seed derivation for nested streams (experiment -> repeat -> fold -> ...).
// Non-commutative, so mix_seed(a, b) and mix_seed(b, a) give distinct streams.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    return splitmix64(a ^ (0x9e3779b97f4a7c15ULL + splitmix64(b)));
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Unbiased uniform integer in [0, n), n >= 1, by rejection.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t rem =
        (std::numeric_limits<std::uint64_t>::max() % n + 1) % n;  // 2^64 mod n
    std::uint64_t x = rng();
    while (rem != 0 && x >= std::numeric_limits<std::uint64_t>::max() - rem + 1) {
        x = rng();
    }
    return x % n;
}

// Standard normal via basic Box-Muller. The basic (non-polar) form consumes a
// fixed two draws per call, which keeps derived streams aligned.
inline double standard_normal(std::mt19937_64& rng) {
    double u1 = uniform01(rng);
    while (u1 <= 0.0) {
        u1 = uniform01(rng);
    }
    const double u2 = uniform01(rng);
    constexpr double two_pi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

}  // namespace fsel
