// Constant composition distribution matching with Maxwell-Boltzmann input
// laws. The matcher is an exact arithmetic code: the interval bounds are the
// remaining-composition multinomials, kept as big integers, so encode and
// decode are exact inverses with no finite-precision gap handling.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "pas4d/constellation.hpp"
#include "pas4d/source.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace pas4d {

using BigInt = boost::multiprecision::cpp_int;

// P(a) proportional to exp(-nu * a^2) on the positive amplitudes 1, 3, ..., M-1.
struct MbDistribution {
    AskAlphabet ask;
    double nu = 0.0;
    std::vector<double> pmf;  // indexed by amplitude index

    double entropy_bits() const;
    double prob_of_amplitude(int amplitude) const {
        return pmf[static_cast<std::size_t>(ask.amp_index_of(amplitude))];
    }
};

MbDistribution mb_pmf(const AskAlphabet& ask, double nu);

// Finds nu such that the amplitude entropy equals target_h bits, by bisection
// (entropy is strictly decreasing in nu). target_h must lie in (0, log2(M/2)].
double fit_mb_entropy(const AskAlphabet& ask, double target_h, double tol = 1e-11);

// Fixed amplitude composition of an n-symbol block.
struct Composition {
    AskAlphabet ask;
    int n = 0;
    std::vector<int> counts;  // per amplitude index, sums to n

    int count_of_amplitude(int amplitude) const {
        return counts[static_cast<std::size_t>(ask.amp_index_of(amplitude))];
    }
    // Empirical amplitude entropy of counts/n, bits per amplitude.
    double empirical_entropy_bits() const;
};

// Largest-remainder quantization of n * P(a); ties go to smaller amplitudes.
Composition quantize_composition(const MbDistribution& pmf, int n);

// Number of sequences with this composition: n! / prod counts(a)!.
BigInt multinomial(const Composition& c);

// floor(log2 multinomial): the number of data bits one block carries.
int ccdm_input_length(const Composition& c);

class CcdmCodec {
  public:
    explicit CcdmCodec(Composition composition);

    const Composition& composition() const { return comp_; }
    int input_length() const { return k_cc_; }
    const BigInt& sequence_count() const { return total_; }

    // bits (MSB first, values 0/1, exactly input_length() of them) -> amplitude
    // sequence of length n with exactly the codec composition. Interval
    // subdivision at each step is proportional to the remaining counts,
    // sub-intervals ordered by ascending amplitude, so smaller inputs map to
    // lexicographically smaller sequences.
    std::vector<int> encode(const std::vector<std::uint8_t>& bits) const;

    // Exact inverse. Throws std::domain_error if the sequence does not have
    // the codec composition or lies outside the code image.
    std::vector<std::uint8_t> decode(const std::vector<int>& sequence) const;

  private:
    Composition comp_;
    BigInt total_;
    int k_cc_ = 0;
};

// Transmit law of the conventional matcher: i.i.d. per dimension, amplitudes
// Maxwell-Boltzmann, signs uniform. M^4 points.
ShapedSource mb_product_source(const AskAlphabet& ask, double nu);

// "amplitude,count" rows.
void write_composition_csv(const Composition& c, std::ostream& os);

}  // namespace pas4d
