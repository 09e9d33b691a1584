#include "pas4d/constellation.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace pas4d {

namespace {

bool is_pow2(int v) { return v > 0 && (v & (v - 1)) == 0; }

int ilog2(int v) {
    int b = 0;
    while ((1 << b) < v) ++b;
    return b;
}

}  // namespace

AskAlphabet AskAlphabet::grid(int M) {
    if (M < 2 || !is_pow2(M)) {
        throw std::invalid_argument("AskAlphabet::grid: M must be a power of two >= 2");
    }
    AskAlphabet ask;
    ask.M = M;
    ask.bits_per_dim = ilog2(M);
    ask.levels.resize(static_cast<std::size_t>(M));
    for (int j = 0; j < M; ++j) ask.levels[static_cast<std::size_t>(j)] = 2 * j - (M - 1);
    return ask;
}

AskAlphabet build_ask(int M) {
    if (M < 4 || !is_pow2(M)) {
        throw std::invalid_argument("build_ask: M must be a power of two >= 4, got " +
                                    std::to_string(M));
    }
    return AskAlphabet::grid(M);
}

std::vector<std::uint32_t> brgc(int width) {
    if (width < 1 || width > 31) throw std::invalid_argument("brgc: width out of range");
    std::vector<std::uint32_t> g(1u << width);
    for (std::uint32_t i = 0; i < g.size(); ++i) g[i] = i ^ (i >> 1);
    return g;
}

Labeling4D make_labeling(const AskAlphabet& ask) {
    Labeling4D lab;
    lab.ask = ask;
    lab.m = 4 * ask.bits_per_dim;
    lab.m_q = lab.m - 4;

    // Gray-code the ascending level index, then flip the top bit so that sign
    // bit 0 means a positive level. The flip is a constant XOR, so adjacent
    // labels still differ in exactly one bit.
    const auto g = brgc(ask.bits_per_dim);
    const std::uint32_t sign_mask = 1u << (ask.bits_per_dim - 1);
    lab.label_of_level.resize(static_cast<std::size_t>(ask.M));
    lab.level_of_label.resize(static_cast<std::size_t>(ask.M));
    for (int j = 0; j < ask.M; ++j) {
        const std::uint32_t word = g[static_cast<std::size_t>(j)] ^ sign_mask;
        lab.label_of_level[static_cast<std::size_t>(j)] = word;
        lab.level_of_label[word] = ask.level_at(j);
    }
    return lab;
}

std::uint32_t Labeling4D::label_of_point(const Point4D& p) const {
    std::uint32_t word = 0;
    for (int d = 0; d < 4; ++d) {
        const int lev = p.c[static_cast<std::size_t>(d)];
        const int idx = ask.level_index_of(lev);
        if (idx < 0 || idx >= ask.M || ask.level_at(idx) != lev) {
            throw std::invalid_argument("point_to_label: coordinate " + std::to_string(lev) +
                                        " is not a level of the " + std::to_string(ask.M) +
                                        "-ASK grid");
        }
        word |= label_of_level[static_cast<std::size_t>(idx)] << field_shift(d);
    }
    return word;
}

Point4D Labeling4D::point_of_label(std::uint32_t label) const {
    if (m < 32 && (label >> m) != 0) {
        throw std::invalid_argument("label_to_point: label wider than m bits");
    }
    Point4D p;
    for (int d = 0; d < 4; ++d) {
        p.c[static_cast<std::size_t>(d)] = level_of_label[sublabel(label, d)];
    }
    return p;
}

Point4D label_to_point(const Labeling4D& lab, std::uint32_t bits) { return lab.point_of_label(bits); }

std::uint32_t point_to_label(const Labeling4D& lab, const Point4D& p) { return lab.label_of_point(p); }

std::vector<AmplitudeTuple> quadrant_enumerate(const AskAlphabet& ask) {
    const int half = ask.amp_count();
    std::vector<AmplitudeTuple> tuples;
    tuples.reserve(static_cast<std::size_t>(half) * half * half * half);
    for (int i0 = 0; i0 < half; ++i0)
        for (int i1 = 0; i1 < half; ++i1)
            for (int i2 = 0; i2 < half; ++i2)
                for (int i3 = 0; i3 < half; ++i3)
                    tuples.push_back(AmplitudeTuple{{ask.amplitude_at(i0), ask.amplitude_at(i1),
                                                     ask.amplitude_at(i2), ask.amplitude_at(i3)}});
    std::sort(tuples.begin(), tuples.end(), [](const AmplitudeTuple& x, const AmplitudeTuple& y) {
        const int ex = x.energy(), ey = y.energy();
        if (ex != ey) return ex < ey;
        return x.a < y.a;
    });
    return tuples;
}

}  // namespace pas4d
