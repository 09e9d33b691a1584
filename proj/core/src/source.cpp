#include "pas4d/source.hpp"

#include <cmath>
#include <stdexcept>

namespace pas4d {

void ShapedSource::finalize() {
    if (pmf.size() != level_idx.size() || pmf.size() != labels.size() || pmf.empty()) {
        throw std::invalid_argument("ShapedSource: inconsistent point arrays");
    }
    double sum = 0.0;
    for (double p : pmf) sum += p;
    if (std::abs(sum - 1.0) > 1e-12) {
        throw std::invalid_argument("ShapedSource: pmf does not sum to 1");
    }

    for (auto& m : dim_marginal) m.assign(static_cast<std::size_t>(ask.M), 0.0);
    double energy = 0.0;
    double ent = 0.0;
    for (std::size_t i = 0; i < pmf.size(); ++i) {
        const double p = pmf[i];
        int e = 0;
        for (int d = 0; d < 4; ++d) {
            const int lev = level(i, d);
            e += lev * lev;
            dim_marginal[static_cast<std::size_t>(d)][level_idx[i][static_cast<std::size_t>(d)]] += p;
        }
        energy += p * e;
        if (p > 0.0) ent -= p * std::log2(p);
    }
    mean_energy_grid = energy;
    // Uniform laws get the exact closed form so H(X) = log2 |X| holds to the bit.
    entropy_bits = uniform_pmf ? std::log2(static_cast<double>(pmf.size())) : ent;
}

ShapedSource uniform_product_source(const AskAlphabet& ask) {
    ShapedSource src;
    src.ask = ask;
    src.labeling = make_labeling(ask);
    src.name = "uniform-" + std::to_string(ask.M * ask.M) + "qam";

    const int M = ask.M;
    const std::size_t n = static_cast<std::size_t>(M) * M * M * M;
    src.level_idx.reserve(n);
    src.labels.reserve(n);
    for (int i0 = 0; i0 < M; ++i0)
        for (int i1 = 0; i1 < M; ++i1)
            for (int i2 = 0; i2 < M; ++i2)
                for (int i3 = 0; i3 < M; ++i3) {
                    src.level_idx.push_back({static_cast<std::uint8_t>(i0), static_cast<std::uint8_t>(i1),
                                             static_cast<std::uint8_t>(i2), static_cast<std::uint8_t>(i3)});
                    const Point4D p{{ask.level_at(i0), ask.level_at(i1), ask.level_at(i2), ask.level_at(i3)}};
                    src.labels.push_back(src.labeling.label_of_point(p));
                }
    src.pmf.assign(n, 1.0 / static_cast<double>(n));
    src.uniform_pmf = true;
    src.product_per_dim = true;
    src.finalize();
    return src;
}

}  // namespace pas4d
