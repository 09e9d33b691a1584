// A 4D constellation with a probability law: the common currency between the
// distribution matchers, the channel and the rate estimators.
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "pas4d/constellation.hpp"

namespace pas4d {

struct ShapedSource {
    AskAlphabet ask;
    Labeling4D labeling;
    std::string name;

    // One entry per constellation point: per-dimension level indices, the
    // point probability and the m-bit label.
    std::vector<std::array<std::uint8_t, 4>> level_idx;
    std::vector<double> pmf;
    std::vector<std::uint32_t> labels;

    // Per-dimension level marginals, [dim][level index].
    std::array<std::vector<double>, 4> dim_marginal;

    double entropy_bits = 0.0;       // H(X), bits per 4D symbol
    double mean_energy_grid = 0.0;   // E[||x||^2] in grid units^2
    double scale = 1.0;              // grid -> signal scaling

    bool uniform_pmf = false;
    bool product_per_dim = false;    // support and pmf factorize per dimension

    std::size_t size() const { return pmf.size(); }
    int level(std::size_t i, int d) const {
        return ask.level_at(level_idx[i][static_cast<std::size_t>(d)]);
    }
    double coord(std::size_t i, int d) const { return scale * level(i, d); }
    double mean_energy_signal() const { return scale * scale * mean_energy_grid; }

    // Recomputes entropy, mean energy and the marginals from the pmf.
    void finalize();
};

// Uniform law over the full M^4 product constellation.
ShapedSource uniform_product_source(const AskAlphabet& ask);

}  // namespace pas4d
