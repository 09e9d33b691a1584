// M-ASK alphabets, the 4D product constellation, Gray bit labels and the
// quadrant decomposition into amplitude and sign bits.
#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace pas4d {

// Equidistant M-ASK grid with odd-integer levels -(M-1), ..., -1, +1, ..., +(M-1).
// Levels stay on the integer grid; power normalization happens downstream.
struct AskAlphabet {
    int M = 0;
    int bits_per_dim = 0;
    std::vector<int> levels;  // ascending

    // Bare grid constructor; accepts M = 2 for BPSK/QPSK-style baselines that
    // carry no quadrant bits. Shaping entry points go through build_ask.
    static AskAlphabet grid(int M);

    int amp_count() const { return M / 2; }
    // Positive amplitudes are 1, 3, ..., M-1, indexed 0 .. M/2-1.
    int amplitude_at(int amp_index) const { return 2 * amp_index + 1; }
    int amp_index_of(int amplitude) const { return (amplitude - 1) / 2; }
    int level_at(int level_index) const { return levels[static_cast<std::size_t>(level_index)]; }
    int level_index_of(int level) const { return (level + M - 1) / 2; }
};

// build_ask(M): M must be a power of two, M >= 4.
AskAlphabet build_ask(int M);

// Binary reflected Gray code of the given width: entry i is i ^ (i >> 1).
std::vector<std::uint32_t> brgc(int width);

// One positive-orthant 4D point: four positive odd amplitudes.
struct AmplitudeTuple {
    std::array<int, 4> a{};

    int energy() const { return a[0] * a[0] + a[1] * a[1] + a[2] * a[2] + a[3] * a[3]; }
    bool operator==(const AmplitudeTuple&) const = default;
    bool operator<(const AmplitudeTuple& o) const { return a < o.a; }
};

// Signed 4D grid point.
struct Point4D {
    std::array<int, 4> c{};

    int energy() const { return c[0] * c[0] + c[1] * c[1] + c[2] * c[2] + c[3] * c[3]; }
    bool operator==(const Point4D&) const = default;
};

// Bit labeling of the 4D product constellation: each dimension carries a
// log2(M)-bit Gray sublabel, concatenated dim 0 first (most significant).
// Within each sublabel the top bit is the sign (0 = positive, 1 = negative)
// and the remaining bits depend only on |level|, so amplitude and sign bits
// separate cleanly as the quadrant decomposition requires.
struct Labeling4D {
    AskAlphabet ask;
    int m = 0;    // 4 * log2(M)
    int m_q = 0;  // m - 4 amplitude bits
    static constexpr int m_s = 4;

    std::vector<std::uint32_t> label_of_level;  // per level index, bits_per_dim wide
    std::vector<int> level_of_label;            // inverse

    // Bit position of dimension d's field within the m-bit word.
    int field_shift(int dim) const { return (3 - dim) * ask.bits_per_dim; }
    int sign_bit_pos(int dim) const { return field_shift(dim) + ask.bits_per_dim - 1; }

    std::uint32_t sublabel(std::uint32_t label, int dim) const {
        return (label >> field_shift(dim)) & ((1u << ask.bits_per_dim) - 1);
    }

    std::uint32_t label_of_point(const Point4D& p) const;
    Point4D point_of_label(std::uint32_t label) const;
};

Labeling4D make_labeling(const AskAlphabet& ask);

// label_to_point / point_to_label: bijection between m-bit words and the M^4
// grid points. point_to_label rejects coordinates that are not grid levels.
Point4D label_to_point(const Labeling4D& lab, std::uint32_t bits);
std::uint32_t point_to_label(const Labeling4D& lab, const Point4D& p);

// All (M/2)^4 amplitude tuples of one quadrant, sorted by energy ascending,
// ties broken lexicographically. This order defines the shaping tables.
std::vector<AmplitudeTuple> quadrant_enumerate(const AskAlphabet& ask);

}  // namespace pas4d
