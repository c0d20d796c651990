#pragma once

#include <cmath>
#include <cstdint>

#include "lipcert/geometry.hpp"

// Counter-based sampling streams. Every drawn value is a pure function of
// (seed, sample index, slot), so samples can be produced in any order --
// serial and parallel sweeps emit bit-identical reports. stdlib
// distributions are avoided because their output is implementation-defined.
namespace lipcert::rng {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
/// Auxiliary uniforms (radius factors, lambdas) live in a disjoint slot
/// region so they never collide with coordinate gaussians.
inline constexpr std::uint64_t kAuxSlot = std::uint64_t{1} << 32;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += kGolden;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline std::uint64_t stream_bits(std::uint64_t seed, std::uint64_t index,
                                 std::uint64_t slot) {
    std::uint64_t h = splitmix64(seed ^ 0x2545F4914F6CDD1Dull);
    h = splitmix64(h ^ index);
    return splitmix64(h ^ (slot + kGolden));
}

/// Uniform in [0, 1).
inline double uniform01(std::uint64_t seed, std::uint64_t index,
                        std::uint64_t slot) {
    return static_cast<double>(stream_bits(seed, index, slot) >> 11) *
           0x1.0p-53;
}

/// Uniform in (0, 1]; safe as a log argument.
inline double uniform_open01(std::uint64_t seed, std::uint64_t index,
                             std::uint64_t slot) {
    return static_cast<double>((stream_bits(seed, index, slot) >> 11) + 1) *
           0x1.0p-53;
}

/// Standard normal via Box-Muller; consumes raw slots 2k and 2k+1.
inline double gaussian(std::uint64_t seed, std::uint64_t index,
                       std::uint64_t k) {
    const double u1 = uniform_open01(seed, index, 2 * k);
    const double u2 = uniform01(seed, index, 2 * k + 1);
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.141592653589793238462643383279502884 * u2);
}

/// Uniform unit direction: normalized gaussian vector. Gaussian slots used:
/// [slot_base, slot_base + dim) (shifted on the astronomically unlikely
/// retry).
inline Vec unit_direction(std::uint64_t seed, std::uint64_t index, int dim,
                          std::uint64_t slot_base = 0) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        Vec u(static_cast<std::size_t>(dim));
        const std::uint64_t base =
            slot_base + static_cast<std::uint64_t>(attempt) * (1ull << 20);
        for (int k = 0; k < dim; ++k) {
            u[static_cast<std::size_t>(k)] =
                gaussian(seed, index, base + static_cast<std::uint64_t>(k));
        }
        const double n = norm(u);
        if (n > 1e-12) {
            for (double& c : u) c /= n;
            return u;
        }
    }
    Vec fallback(static_cast<std::size_t>(dim), 0.0);
    fallback[0] = 1.0;
    return fallback;
}

/// Uniform point of the closed ball: center + r U^{1/n} u with u a uniform
/// unit direction and U uniform in [0, 1).
inline Vec ball_point(std::uint64_t seed, std::uint64_t index,
                      const Ball& ball, std::uint64_t slot_base = 0) {
    const int n = ball.dim();
    Vec u = unit_direction(seed, index, n, slot_base);
    const double radial = ball.radius *
                          std::pow(uniform01(seed, index, kAuxSlot + slot_base),
                                   1.0 / static_cast<double>(n));
    Vec p(ball.center);
    for (int k = 0; k < n; ++k) {
        p[static_cast<std::size_t>(k)] += radial * u[static_cast<std::size_t>(k)];
    }
    return p;
}

}  // namespace lipcert::rng
