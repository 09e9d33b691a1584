#include "pas4d/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace pas4d {

// Newton iteration on the orthonormal Hermite recurrence. The orthonormal
// form keeps intermediate values of order one even at n = 40, where the
// monic/physicists' polynomials overflow.
GaussHermite gauss_hermite(int n) {
    if (n < 1 || n > 200) throw std::invalid_argument("gauss_hermite: n out of range");

    constexpr double kPiQuarter = 0.7511255444649425;  // pi^(-1/4)
    constexpr double kEps = 1e-15;

    GaussHermite gh;
    gh.nodes.resize(static_cast<std::size_t>(n));
    gh.weights.resize(static_cast<std::size_t>(n));

    const int half = (n + 1) / 2;
    double z = 0.0;
    for (int i = 0; i < half; ++i) {
        // Initial guesses for roots in descending order (largest first).
        if (i == 0) {
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        } else if (i == 1) {
            z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        } else if (i == 2) {
            z = 1.86 * z - 0.86 * gh.nodes[static_cast<std::size_t>(n - 1)];
        } else if (i == 3) {
            z = 1.91 * z - 0.91 * gh.nodes[static_cast<std::size_t>(n - 2)];
        } else {
            z = 2.0 * z - gh.nodes[static_cast<std::size_t>(n - i + 1)];
        }

        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = kPiQuarter;
            double p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1.0)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1.0)) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            const double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) <= kEps) break;
        }
        gh.nodes[static_cast<std::size_t>(n - 1 - i)] = z;
        gh.nodes[static_cast<std::size_t>(i)] = -z;
        gh.weights[static_cast<std::size_t>(n - 1 - i)] = 2.0 / (pp * pp);
        gh.weights[static_cast<std::size_t>(i)] = gh.weights[static_cast<std::size_t>(n - 1 - i)];
    }
    if (n % 2 == 1) gh.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
    return gh;
}

}  // namespace pas4d
