// Seeded random source with fixed output.
//
// All randomness in the library flows through this wrapper so that runs are
// reproducible bit-for-bit for a given build. std::mt19937_64 is fully
// specified by the standard; the uniform and Gaussian transforms below are
// spelled out explicitly because the std distributions are not. (Across
// platforms, differences are limited to libm rounding in the Box-Muller
// transcendentals.)
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>

namespace pas4d {

// splitmix64; used to derive independent sub-stream seeds from a master seed.
inline std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seed for a (mode, snr) cell of a sweep: deterministic in the three inputs,
// independent of evaluation order.
inline std::uint64_t cell_seed(std::uint64_t master, std::uint64_t mode_index,
                               std::uint64_t snr_index) {
    return mix_seed(mix_seed(master ^ mix_seed(mode_index + 1)) ^ mix_seed(snr_index + 0x10000));
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0, 1) with 53 random bits.
    double u01() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, n); n need not be a power of two. Uses the
    // 53-bit double path, which is exact for n <= 2^53 up to the negligible
    // bias of the floating grid.
    std::uint64_t below(std::uint64_t n) {
        auto v = static_cast<std::uint64_t>(u01() * static_cast<double>(n));
        return v < n ? v : n - 1;
    }

    std::uint64_t bit() { return gen_() >> 63; }

    // One Box-Muller pair of independent standard normals.
    std::array<double, 2> normal_pair() {
        double u1 = u01();
        double u2 = u01();
        // Guard u1 = 0 (probability 2^-53 per draw).
        while (u1 == 0.0) u1 = u01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double phi = 2.0 * 3.14159265358979323846 * u2;
        return {r * std::cos(phi), r * std::sin(phi)};
    }

  private:
    std::mt19937_64 gen_;
};

}  // namespace pas4d
