// Look-up-table distribution matcher: k uniform bits select one of the 2^k
// lowest-energy amplitude 4-tuples of a quadrant, with an exact inverse.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "pas4d/constellation.hpp"
#include "pas4d/source.hpp"

namespace pas4d {

struct LutDm {
    AskAlphabet ask;
    int k = 0;                          // input bits per 4D symbol
    std::vector<AmplitudeTuple> table;  // 2^k entries, energy then lex order
    std::vector<std::int32_t> inverse;  // packed tuple -> table index, -1 if absent

    std::size_t size() const { return table.size(); }

    std::uint32_t pack(const AmplitudeTuple& t) const {
        const std::uint32_t half = static_cast<std::uint32_t>(ask.amp_count());
        std::uint32_t key = 0;
        for (int d = 0; d < 4; ++d)
            key = key * half + static_cast<std::uint32_t>(ask.amp_index_of(t.a[static_cast<std::size_t>(d)]));
        return key;
    }
};

// Table = first 2^k entries of quadrant_enumerate(ask); 1 <= k <= m_q.
LutDm build_lut(const AskAlphabet& ask, int k);

// bits -> tuple, table lookup. bits must fit in k bits.
AmplitudeTuple lut_encode(const LutDm& dm, std::uint32_t bits);

// tuple -> bits. Throws std::domain_error for tuples outside the table,
// which indicates an invalid or uncorrected receive decision upstream.
std::uint32_t lut_decode(const LutDm& dm, const AmplitudeTuple& t);

// The transmit law of the matcher: uniform over {16 sign patterns} x table,
// 2^(k+4) points, H(X) = k + 4 bits per 4D symbol. Point index layout is
// (sign bits << k) | table index with sign bit order dim 0 first.
ShapedSource lut_source(const LutDm& dm);

// Audit dump: header plus one row "index,a1,a2,a3,a4,energy" per entry.
void write_lut_csv(const LutDm& dm, std::ostream& os);

}  // namespace pas4d
