#include "pas4d/ccdm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace pas4d {

namespace {

double pmf_entropy_bits(const std::vector<double>& p) {
    double h = 0.0;
    for (double v : p)
        if (v > 0.0) h -= v * std::log2(v);
    return h;
}

}  // namespace

double MbDistribution::entropy_bits() const { return pmf_entropy_bits(pmf); }

MbDistribution mb_pmf(const AskAlphabet& ask, double nu) {
    if (!(nu >= 0.0)) throw std::invalid_argument("mb_pmf: nu must be >= 0");
    MbDistribution d;
    d.ask = ask;
    d.nu = nu;
    const int half = ask.amp_count();
    d.pmf.resize(static_cast<std::size_t>(half));
    // Exponents relative to the a = 1 term keep the weights in range for any nu.
    double z = 0.0;
    for (int i = 0; i < half; ++i) {
        const double a = ask.amplitude_at(i);
        d.pmf[static_cast<std::size_t>(i)] = std::exp(-nu * (a * a - 1.0));
        z += d.pmf[static_cast<std::size_t>(i)];
    }
    for (double& v : d.pmf) v /= z;
    return d;
}

double fit_mb_entropy(const AskAlphabet& ask, double target_h, double tol) {
    const double h_max = std::log2(static_cast<double>(ask.amp_count()));
    if (!(target_h > 0.0) || target_h > h_max + 1e-12) {
        throw std::invalid_argument("fit_mb_entropy: target entropy must lie in (0, log2(M/2)]");
    }
    if (target_h >= h_max) return 0.0;

    double lo = 0.0;
    double hi = 1e-3;
    while (mb_pmf(ask, hi).entropy_bits() > target_h) {
        hi *= 2.0;
        if (hi > 1e6) throw std::runtime_error("fit_mb_entropy: bracket search failed");
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double h = mb_pmf(ask, mid).entropy_bits();
        if (std::abs(h - target_h) <= tol) return mid;
        (h > target_h ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double Composition::empirical_entropy_bits() const {
    std::vector<double> p(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i)
        p[i] = static_cast<double>(counts[i]) / static_cast<double>(n);
    return pmf_entropy_bits(p);
}

Composition quantize_composition(const MbDistribution& pmf, int n) {
    if (n < 1) throw std::invalid_argument("quantize_composition: n must be >= 1");
    Composition c;
    c.ask = pmf.ask;
    c.n = n;
    const std::size_t half = pmf.pmf.size();
    c.counts.resize(half);

    std::vector<double> frac(half);
    int assigned = 0;
    for (std::size_t i = 0; i < half; ++i) {
        const double ideal = static_cast<double>(n) * pmf.pmf[i];
        c.counts[i] = static_cast<int>(std::floor(ideal));
        frac[i] = ideal - std::floor(ideal);
        assigned += c.counts[i];
    }
    // Hand the leftover units to the largest fractional parts; ties favor the
    // smaller amplitude, i.e. the lower index.
    std::vector<std::size_t> order(half);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return frac[x] > frac[y]; });
    for (int r = 0; r < n - assigned; ++r) ++c.counts[order[static_cast<std::size_t>(r)]];
    return c;
}

BigInt multinomial(const Composition& c) {
    BigInt result = 1;
    int placed = 0;
    for (int count : c.counts) {
        // binom(placed + count, count), multiplicative form with exact division.
        placed += count;
        for (int j = 1; j <= count; ++j) {
            result *= placed - count + j;
            result /= j;
        }
    }
    return result;
}

int ccdm_input_length(const Composition& c) {
    const BigInt total = multinomial(c);
    return total == 1 ? 0 : static_cast<int>(boost::multiprecision::msb(total));
}

CcdmCodec::CcdmCodec(Composition composition) : comp_(std::move(composition)) {
    if (comp_.n < 1) throw std::invalid_argument("CcdmCodec: empty composition");
    if (static_cast<int>(comp_.counts.size()) != comp_.ask.amp_count()) {
        throw std::invalid_argument("CcdmCodec: counts must cover every positive amplitude");
    }
    int sum = 0;
    for (int count : comp_.counts) {
        if (count < 0) throw std::invalid_argument("CcdmCodec: negative count");
        sum += count;
    }
    if (sum != comp_.n) throw std::invalid_argument("CcdmCodec: counts do not sum to n");
    total_ = multinomial(comp_);
    k_cc_ = total_ == 1 ? 0 : static_cast<int>(boost::multiprecision::msb(total_));
}

std::vector<int> CcdmCodec::encode(const std::vector<std::uint8_t>& bits) const {
    if (static_cast<int>(bits.size()) != k_cc_) {
        throw std::invalid_argument("ccdm encode: expected exactly " + std::to_string(k_cc_) +
                                    " bits");
    }
    BigInt v = 0;
    for (std::uint8_t b : bits) {
        if (b > 1) throw std::invalid_argument("ccdm encode: bits must be 0 or 1");
        v <<= 1;
        v |= b;
    }

    std::vector<int> counts = comp_.counts;
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(comp_.n));
    BigInt remaining = total_;
    for (int n_rem = comp_.n; n_rem > 0; --n_rem) {
        for (std::size_t a = 0; a < counts.size(); ++a) {
            if (counts[a] == 0) continue;
            // Sequences that continue with amplitude a: width proportional to
            // its remaining count. The division is exact.
            BigInt width = remaining * counts[a] / n_rem;
            if (v < width) {
                out.push_back(comp_.ask.amplitude_at(static_cast<int>(a)));
                remaining = std::move(width);
                --counts[a];
                break;
            }
            v -= width;
        }
    }
    return out;
}

std::vector<std::uint8_t> CcdmCodec::decode(const std::vector<int>& sequence) const {
    if (static_cast<int>(sequence.size()) != comp_.n) {
        throw std::domain_error("ccdm decode: wrong sequence length");
    }
    std::vector<int> seen(comp_.counts.size(), 0);
    for (int amp : sequence) {
        if (amp < 1 || amp > comp_.ask.M - 1 || amp % 2 == 0) {
            throw std::domain_error("ccdm decode: symbol is not a grid amplitude");
        }
        ++seen[static_cast<std::size_t>(comp_.ask.amp_index_of(amp))];
    }
    if (seen != comp_.counts) {
        throw std::domain_error("ccdm decode: sequence does not have the codec composition");
    }

    std::vector<int> counts = comp_.counts;
    BigInt v = 0;
    BigInt remaining = total_;
    for (int pos = 0; pos < comp_.n; ++pos) {
        const int n_rem = comp_.n - pos;
        const std::size_t chosen =
            static_cast<std::size_t>(comp_.ask.amp_index_of(sequence[static_cast<std::size_t>(pos)]));
        BigInt width;
        for (std::size_t a = 0; a <= chosen; ++a) {
            if (counts[a] == 0) continue;
            width = remaining * counts[a] / n_rem;
            if (a < chosen) v += width;
        }
        remaining = std::move(width);
        --counts[chosen];
    }

    if ((v >> k_cc_) != 0) {
        throw std::domain_error("ccdm decode: sequence lies outside the code image");
    }
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(k_cc_));
    for (int i = 0; i < k_cc_; ++i) {
        bits[static_cast<std::size_t>(k_cc_ - 1 - i)] =
            static_cast<std::uint8_t>(boost::multiprecision::bit_test(v, static_cast<unsigned>(i)));
    }
    return bits;
}

ShapedSource mb_product_source(const AskAlphabet& ask, double nu) {
    const MbDistribution amp = mb_pmf(ask, nu);

    ShapedSource src;
    src.ask = ask;
    src.labeling = make_labeling(ask);
    src.name = "mb-M" + std::to_string(ask.M);

    std::vector<double> level_pmf(static_cast<std::size_t>(ask.M));
    for (int j = 0; j < ask.M; ++j) {
        const int lev = ask.level_at(j);
        level_pmf[static_cast<std::size_t>(j)] = 0.5 * amp.prob_of_amplitude(std::abs(lev));
    }

    const int M = ask.M;
    const std::size_t n = static_cast<std::size_t>(M) * M * M * M;
    src.level_idx.reserve(n);
    src.labels.reserve(n);
    src.pmf.reserve(n);
    for (int i0 = 0; i0 < M; ++i0)
        for (int i1 = 0; i1 < M; ++i1)
            for (int i2 = 0; i2 < M; ++i2)
                for (int i3 = 0; i3 < M; ++i3) {
                    src.level_idx.push_back({static_cast<std::uint8_t>(i0), static_cast<std::uint8_t>(i1),
                                             static_cast<std::uint8_t>(i2), static_cast<std::uint8_t>(i3)});
                    const Point4D p{{ask.level_at(i0), ask.level_at(i1), ask.level_at(i2), ask.level_at(i3)}};
                    src.labels.push_back(src.labeling.label_of_point(p));
                    src.pmf.push_back(level_pmf[static_cast<std::size_t>(i0)] *
                                      level_pmf[static_cast<std::size_t>(i1)] *
                                      level_pmf[static_cast<std::size_t>(i2)] *
                                      level_pmf[static_cast<std::size_t>(i3)]);
                }
    src.uniform_pmf = nu == 0.0;
    src.product_per_dim = true;
    src.finalize();
    return src;
}

void write_composition_csv(const Composition& c, std::ostream& os) {
    os << "amplitude,count\n";
    for (std::size_t i = 0; i < c.counts.size(); ++i) {
        os << c.ask.amplitude_at(static_cast<int>(i)) << ',' << c.counts[i] << '\n';
    }
}

}  // namespace pas4d
