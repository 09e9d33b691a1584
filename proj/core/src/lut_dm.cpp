#include "pas4d/lut_dm.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace pas4d {

LutDm build_lut(const AskAlphabet& ask, int k) {
    const int m_q = 4 * ask.bits_per_dim - 4;
    if (k < 1 || k > m_q) {
        throw std::invalid_argument("build_lut: k must be in 1.." + std::to_string(m_q) +
                                    " for M=" + std::to_string(ask.M));
    }
    LutDm dm;
    dm.ask = ask;
    dm.k = k;

    auto all = quadrant_enumerate(ask);
    dm.table.assign(all.begin(), all.begin() + (std::ptrdiff_t{1} << k));

    const std::size_t quadrant = all.size();
    dm.inverse.assign(quadrant, -1);
    for (std::size_t i = 0; i < dm.table.size(); ++i) {
        dm.inverse[dm.pack(dm.table[i])] = static_cast<std::int32_t>(i);
    }
    return dm;
}

AmplitudeTuple lut_encode(const LutDm& dm, std::uint32_t bits) {
    if (bits >= dm.table.size()) {
        throw std::invalid_argument("lut_encode: input exceeds k bits");
    }
    return dm.table[bits];
}

std::uint32_t lut_decode(const LutDm& dm, const AmplitudeTuple& t) {
    for (int v : t.a) {
        if (v < 1 || v > dm.ask.M - 1 || v % 2 == 0) {
            throw std::domain_error("lut_decode: not a positive amplitude of the grid");
        }
    }
    const std::int32_t idx = dm.inverse[dm.pack(t)];
    if (idx < 0) {
        throw std::domain_error("lut_decode: tuple is not in the shaping table");
    }
    return static_cast<std::uint32_t>(idx);
}

ShapedSource lut_source(const LutDm& dm) {
    ShapedSource src;
    src.ask = dm.ask;
    src.labeling = make_labeling(dm.ask);
    src.name = "lut-M" + std::to_string(dm.ask.M) + "-k" + std::to_string(dm.k);

    const std::size_t n_points = dm.table.size() << 4;
    src.level_idx.reserve(n_points);
    src.labels.reserve(n_points);
    for (std::uint32_t sign = 0; sign < 16; ++sign) {
        for (const auto& t : dm.table) {
            std::array<std::uint8_t, 4> idx{};
            Point4D p;
            for (int d = 0; d < 4; ++d) {
                const bool neg = (sign >> (3 - d)) & 1u;
                const int lev = neg ? -t.a[static_cast<std::size_t>(d)] : t.a[static_cast<std::size_t>(d)];
                p.c[static_cast<std::size_t>(d)] = lev;
                idx[static_cast<std::size_t>(d)] =
                    static_cast<std::uint8_t>(dm.ask.level_index_of(lev));
            }
            src.level_idx.push_back(idx);
            src.labels.push_back(src.labeling.label_of_point(p));
        }
    }
    src.pmf.assign(n_points, 1.0 / static_cast<double>(n_points));
    src.uniform_pmf = true;
    src.product_per_dim = dm.k == 4 * dm.ask.bits_per_dim - 4;
    src.finalize();
    return src;
}

void write_lut_csv(const LutDm& dm, std::ostream& os) {
    os << "index,a1,a2,a3,a4,energy\n";
    for (std::size_t i = 0; i < dm.table.size(); ++i) {
        const auto& t = dm.table[i];
        os << i << ',' << t.a[0] << ',' << t.a[1] << ',' << t.a[2] << ',' << t.a[3] << ','
           << t.energy() << '\n';
    }
}

}  // namespace pas4d
