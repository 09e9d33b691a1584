#include "pas4d/pas_mapper.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "pas4d/ccdm.hpp"
#include "pas4d/random.hpp"

namespace pas4d {

namespace {

int ilog2(int v) {
    int b = 0;
    while ((1 << b) < v) ++b;
    return b;
}

bool is_pow2(int v) { return v > 0 && (v & (v - 1)) == 0; }

}  // namespace

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    Rational r;
    std::size_t used = 0;
    if (slash == std::string::npos) {
        r.num = std::stoll(text, &used);
        r.den = 1;
        if (used != text.size()) throw std::invalid_argument("parse_rational: trailing characters");
    } else {
        r.num = std::stoll(text.substr(0, slash));
        r.den = std::stoll(text.substr(slash + 1), &used);
        if (used != text.size() - slash - 1)
            throw std::invalid_argument("parse_rational: trailing characters");
    }
    if (r.den <= 0) throw std::invalid_argument("parse_rational: denominator must be positive");
    return r;
}

double gamma_fraction(Rational rc, int M) {
    if (rc.num <= 0 || rc.num > rc.den) {
        throw std::invalid_argument("gamma_fraction: code rate must lie in (0, 1]");
    }
    if (!is_pow2(M) || M < 4) throw std::invalid_argument("gamma_fraction: invalid M");
    const double g = 1.0 - (1.0 - rc.value()) * ilog2(M);
    if (g < 0.0) {
        throw std::invalid_argument("gamma_fraction: code rate " + rc.str() +
                                    " is too low for M=" + std::to_string(M) +
                                    "; sign bits cannot absorb the parity");
    }
    return g;
}

std::string scheme_name(Scheme s) {
    switch (s) {
        case Scheme::Pas4D4D: return "PAS-4D-4D";
        case Scheme::Pas4D2D: return "PAS-4D-2D";
        case Scheme::PasND1D: return "PAS-nD-1D";
        case Scheme::Uniform: return "UNIFORM";
    }
    return "?";
}

std::string PasMode::label() const {
    std::string s = scheme_name(scheme) + "-M" + std::to_string(M);
    if (scheme == Scheme::Pas4D4D || scheme == Scheme::Pas4D2D) s += "-k" + std::to_string(k);
    return s;
}

PasMode make_pas4d_mode(Scheme scheme, int M, int k, Rational rc) {
    if (scheme != Scheme::Pas4D4D && scheme != Scheme::Pas4D2D) {
        throw std::invalid_argument("make_pas4d_mode: scheme must be a PAS-4D variant");
    }
    const int m_q = 4 * ilog2(M) - 4;
    if (k < 1 || k > m_q) throw std::invalid_argument("make_pas4d_mode: k out of range");
    PasMode mode;
    mode.scheme = scheme;
    mode.M = M;
    mode.k = k;
    mode.rc = rc;
    mode.gamma = gamma_fraction(rc, M);
    mode.r_tx_bits_4d = k + 4.0 * mode.gamma;
    mode.se_bpqs = mode.r_tx_bits_4d / 2.0;
    return mode;
}

PasMode make_nd1d_mode(int M, double nu, int n_ccdm, Rational rc) {
    if (n_ccdm < 1) throw std::invalid_argument("make_nd1d_mode: block length must be >= 1");
    PasMode mode;
    mode.scheme = Scheme::PasND1D;
    mode.M = M;
    mode.nu = nu;
    mode.n_ccdm = n_ccdm;
    mode.rc = rc;
    mode.gamma = gamma_fraction(rc, M);
    const Composition comp = quantize_composition(mb_pmf(build_ask(M), nu), n_ccdm);
    const double h_amp = static_cast<double>(ccdm_input_length(comp)) / n_ccdm;
    mode.r_tx_bits_4d = 4.0 * (h_amp + mode.gamma);
    mode.se_bpqs = mode.r_tx_bits_4d / 2.0;
    return mode;
}

PasMode make_uniform_mode(int M) {
    if (!is_pow2(M) || M < 2) throw std::invalid_argument("make_uniform_mode: invalid M");
    PasMode mode;
    mode.scheme = Scheme::Uniform;
    mode.M = M;
    mode.rc = Rational{1, 1};
    mode.gamma = 1.0;
    mode.r_tx_bits_4d = 4.0 * ilog2(M);
    mode.se_bpqs = mode.r_tx_bits_4d / 2.0;
    return mode;
}

std::vector<double> se_set(int M, Rational rc) {
    const double g = gamma_fraction(rc, M);
    const int m_q = 4 * ilog2(M) - 4;
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(m_q));
    for (int k = 1; k <= m_q; ++k) out.push_back(0.5 * k + 2.0 * g);
    return out;
}

int mode_from_target_se(double target_bpqs, int M, Rational rc) {
    const double g = gamma_fraction(rc, M);
    const int m_q = 4 * ilog2(M) - 4;
    const double k_real = 2.0 * (target_bpqs - 2.0 * g);
    const int k = static_cast<int>(std::lround(k_real));
    if (std::abs(k_real - k) > 1e-9 || k < 1 || k > m_q) {
        const int lo = std::clamp(static_cast<int>(std::floor(k_real)), 1, m_q);
        const int hi = std::clamp(lo + 1, 1, m_q);
        throw std::invalid_argument(
            "mode_from_target_se: " + std::to_string(target_bpqs) +
            " bpQs is not achievable; nearest modes: " + std::to_string(0.5 * lo + 2.0 * g) +
            " and " + std::to_string(0.5 * hi + 2.0 * g) + " bpQs");
    }
    return k;
}

PasMode uniform_qam_mode(int bits_per_2d, double target_se_bpqs) {
    if (bits_per_2d < 2 || bits_per_2d % 2 != 0) {
        throw std::invalid_argument("uniform_qam_mode: bits per 2D must be even and >= 2");
    }
    if (!(target_se_bpqs < bits_per_2d)) {
        throw std::invalid_argument("uniform_qam_mode: target SE must be below the raw bit rate");
    }
    PasMode mode = make_uniform_mode(1 << (bits_per_2d / 2));
    // The FEC this format would need to carry target_se information bits.
    const long long half_units = std::llround(target_se_bpqs * 2.0);
    if (std::abs(target_se_bpqs * 2.0 - half_units) > 1e-9) {
        throw std::invalid_argument("uniform_qam_mode: target SE must be a multiple of 0.5 bpQs");
    }
    long long num = half_units;
    long long den = 2LL * bits_per_2d;
    const long long g = std::gcd(num, den);
    mode.rc = Rational{num / g, den / g};
    // gamma is PAS bookkeeping; a uniform format spreads its code rate over
    // all label bits, so the sign-bit split does not apply here.
    mode.se_bpqs = target_se_bpqs;
    mode.r_tx_bits_4d = 2.0 * target_se_bpqs;
    return mode;
}

SymbolStream draw_symbols(const ShapedSource& source, std::size_t K, std::uint64_t seed) {
    if (K < 1) throw std::invalid_argument("draw_symbols: K must be >= 1");
    std::vector<double> cdf(source.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < source.size(); ++i) {
        acc += source.pmf[i];
        cdf[i] = acc;
    }
    cdf.back() = 1.0;

    SymbolStream stream;
    stream.seed = seed;
    stream.indices.resize(K);
    Rng rng(seed);
    for (std::size_t i = 0; i < K; ++i) {
        const double u = rng.u01();
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        stream.indices[i] = static_cast<std::uint32_t>(it - cdf.begin());
    }
    return stream;
}

void write_mode_csv(const std::vector<PasMode>& modes, std::ostream& os) {
    os << "scheme,M,k,Rc,gamma,R_tx_bits_per_4D,SE_bpQs\n";
    char buf[160];
    for (const auto& m : modes) {
        std::snprintf(buf, sizeof buf, "%s,%d,%d,%s,%.6g,%.6g,%.6g\n", scheme_name(m.scheme).c_str(),
                      m.M, m.k, m.rc.str().c_str(), m.gamma, m.r_tx_bits_4d, m.se_bpqs);
        os << buf;
    }
}

}  // namespace pas4d
