#include "pas4d/channel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "pas4d/random.hpp"

namespace pas4d {

SnrSpec SnrSpec::from_db(double db) {
    if (!std::isfinite(db)) return noiseless();
    SnrSpec s;
    s.snr_db = db;
    s.snr_linear = std::pow(10.0, db / 10.0);
    s.sigma2 = 1.0 / (2.0 * s.snr_linear);
    return s;
}

SnrSpec SnrSpec::noiseless() {
    SnrSpec s;
    s.snr_db = std::numeric_limits<double>::infinity();
    s.snr_linear = std::numeric_limits<double>::infinity();
    s.sigma2 = 0.0;
    return s;
}

double normalize(ShapedSource& source) {
    if (!(source.mean_energy_grid > 0.0)) {
        throw std::invalid_argument("normalize: source has no energy");
    }
    source.scale = std::sqrt(2.0 / source.mean_energy_grid);
    return source.scale;
}

ReceiveStream add_noise(const ShapedSource& source, const SymbolStream& xs, SnrSpec snr,
                        std::uint64_t seed) {
    ReceiveStream rx;
    rx.snr = snr;
    rx.seed = seed;
    rx.y.resize(xs.indices.size());
    const double sigma = std::sqrt(snr.sigma2);
    Rng rng(seed);
    for (std::size_t i = 0; i < xs.indices.size(); ++i) {
        const std::uint32_t idx = xs.indices[i];
        const auto n01 = rng.normal_pair();
        const auto n23 = rng.normal_pair();
        rx.y[i] = {source.coord(idx, 0) + sigma * n01[0], source.coord(idx, 1) + sigma * n01[1],
                   source.coord(idx, 2) + sigma * n23[0], source.coord(idx, 3) + sigma * n23[1]};
    }
    return rx;
}

double moment_ratio(const ShapedSource& source) {
    double phi_sum = 0.0;
    for (int slice = 0; slice < 2; ++slice) {
        const int d0 = 2 * slice, d1 = 2 * slice + 1;
        double e2 = 0.0, e4 = 0.0;
        for (std::size_t i = 0; i < source.size(); ++i) {
            const double u = source.level(i, d0);
            const double v = source.level(i, d1);
            const double r2 = u * u + v * v;
            e2 += source.pmf[i] * r2;
            e4 += source.pmf[i] * r2 * r2;
        }
        phi_sum += e4 / (e2 * e2);
    }
    return phi_sum / 2.0;  // scale-invariant, so grid units suffice
}

}  // namespace pas4d
