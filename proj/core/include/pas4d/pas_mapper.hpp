// PAS rate bookkeeping and symbol assembly. FEC is not implemented: parity
// placed on sign bits is uniform for any good code, so sign bits are modeled
// as i.i.d. uniform and only the code rate enters, through gamma.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pas4d/source.hpp"

namespace pas4d {

struct Rational {
    long long num = 1;
    long long den = 1;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

// Parses "13/16" or a plain integer.
Rational parse_rational(const std::string& text);

// Fraction of sign bits per dimension that carry information rather than
// parity: gamma = 1 - (1 - Rc) * log2(M). Throws if the code rate is too low
// for this M (gamma < 0).
double gamma_fraction(Rational rc, int M);

enum class Scheme { Pas4D4D, Pas4D2D, PasND1D, Uniform };

std::string scheme_name(Scheme s);

struct PasMode {
    Scheme scheme = Scheme::Uniform;
    int M = 0;
    int k = 0;            // LUT input bits (PAS-4D schemes)
    double nu = 0.0;      // MB parameter (PAS-nD-1D)
    int n_ccdm = 0;       // CCDM block length (PAS-nD-1D)
    Rational rc{1, 1};
    double gamma = 1.0;
    double r_tx_bits_4d = 0.0;  // transmitted information, bits per 4D symbol
    double se_bpqs = 0.0;       // r_tx / 2

    std::string label() const;
};

PasMode make_pas4d_mode(Scheme scheme, int M, int k, Rational rc);
// r_tx uses the realized matcher rate k_cc/n of the quantized composition.
PasMode make_nd1d_mode(int M, double nu, int n_ccdm, Rational rc);
PasMode make_uniform_mode(int M);

// The spectral efficiencies reachable with one FEC: {k/2 + 2*gamma, k = 1..m_q}
// in bits per QAM symbol, spaced exactly 0.5 apart.
std::vector<double> se_set(int M, Rational rc);

// Inverts the SE set: k = 2*(target - 2*gamma). Rejects targets outside the
// set, reporting the two nearest achievable values.
int mode_from_target_se(double target_bpqs, int M, Rational rc);

// The FEC rate a uniform 2^bits_per_2d-QAM format would need to hit the same
// spectral efficiency; for comparison tables.
PasMode uniform_qam_mode(int bits_per_2d, double target_se_bpqs);

struct SymbolStream {
    std::vector<std::uint32_t> indices;  // into the source constellation
    std::uint64_t seed = 0;
};

// K i.i.d. draws from the source law via its inverse CDF, deterministic in
// the seed.
SymbolStream draw_symbols(const ShapedSource& source, std::size_t K, std::uint64_t seed);

// "scheme,M,k,Rc,gamma,R_tx_bits_per_4D,SE_bpQs" rows for a mode list.
void write_mode_csv(const std::vector<PasMode>& modes, std::ostream& os);

}  // namespace pas4d
