#pragma once

#include <cstdint>
#include <cmath>
#include <numbers>

// Counter-based randomness. Every draw is a pure function of
// (seed, stream, counter), so any cell of any stream can be replayed
// without storing the sequence. Generator name recorded in run metadata:
// "splitmix64-counter"; Gaussian variates: "box-muller".

namespace invbandit {

inline constexpr const char* kGeneratorName = "splitmix64-counter";
inline constexpr const char* kGaussianMethod = "box-muller";

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t mix_key(std::uint64_t seed, std::uint64_t stream,
                                std::uint64_t counter) noexcept {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ stream);
    return splitmix64(h ^ counter);
}

// Uniform in [0, 1): top 53 bits.
inline double unit_uniform(std::uint64_t h) noexcept {
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

// Uniform in (0, 1]; safe as a log() argument.
inline double open_unit_uniform(std::uint64_t h) noexcept {
    return (static_cast<double>(h >> 11) + 1.0) * 0x1.0p-53;
}

// Standard normal from a single 64-bit key. The second uniform is derived
// from the key, so one key yields one reproducible variate.
inline double standard_normal(std::uint64_t key) noexcept {
    const double u1 = open_unit_uniform(key);
    const double u2 = unit_uniform(splitmix64(key ^ 0xd1b54a32d192ed03ULL));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// Draw in [0, n) by multiply-shift; bias is negligible for n << 2^64.
inline std::uint64_t bounded_draw(std::uint64_t h, std::uint64_t n) noexcept {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(h) * static_cast<unsigned __int128>(n)) >> 64);
}

}  // namespace invbandit
