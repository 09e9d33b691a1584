// Power normalization, the linear AWGN channel and transmit-law statistics.
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "pas4d/pas_mapper.hpp"
#include "pas4d/source.hpp"

namespace pas4d {

// SNR convention used throughout: Es/N0 per 2D complex symbol. Sources are
// normalized to unit average energy per 2D slice (2 per 4D symbol), so the
// per-real-dimension noise variance is 1 / (2 * snr_linear).
struct SnrSpec {
    double snr_db = 0.0;
    double snr_linear = 1.0;
    double sigma2 = 0.5;  // per real dimension

    static SnrSpec from_db(double db);
    static SnrSpec noiseless();  // sigma2 = 0 flag, y = x
};

struct ReceiveStream {
    std::vector<std::array<double, 4>> y;
    SnrSpec snr;
    std::uint64_t seed = 0;
};

// Scales the source so E[||x||^2] = 2 per 4D symbol, computed analytically
// over the pmf. Returns the applied grid-to-signal factor.
double normalize(ShapedSource& source);

// y_i = x_i + z_i, z i.i.d. Gaussian per real dimension with variance sigma2.
// The source must be normalized first so SNR is comparable across formats.
ReceiveStream add_noise(const ShapedSource& source, const SymbolStream& xs, SnrSpec snr,
                        std::uint64_t seed);

// E|x_c|^4 / (E|x_c|^2)^2 per complex slice, averaged over the two slices.
// Scalar indicator of the higher-order moments that drive nonlinear
// interference; 1 for constant-modulus, 2 for a circular Gaussian.
double moment_ratio(const ShapedSource& source);

}  // namespace pas4d
