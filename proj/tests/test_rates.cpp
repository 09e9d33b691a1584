#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pas4d/ccdm.hpp"
#include "pas4d/channel.hpp"
#include "pas4d/lut_dm.hpp"
#include "pas4d/quadrature.hpp"
#include "pas4d/random.hpp"
#include "pas4d/rates.hpp"

using namespace pas4d;

namespace {

ShapedSource normalized_lut(int M, int k) {
    ShapedSource s = lut_source(build_lut(build_ask(M), k));
    normalize(s);
    return s;
}

ShapedSource normalized_uniform(int M) {
    ShapedSource s = uniform_product_source(AskAlphabet::grid(M));
    normalize(s);
    return s;
}

// Independent reference for binary antipodal signaling: the per-dimension
// information loss by plain trapezoid integration.
double bpsk_loss_trapezoid(double amplitude, double sigma2) {
    const double sigma = std::sqrt(sigma2);
    const double lo = -12.0 * sigma, hi = 12.0 * sigma;
    const int steps = 200000;
    const double dz = (hi - lo) / steps;
    double acc = 0.0;
    for (int i = 0; i <= steps; ++i) {
        const double z = lo + i * dz;
        const double pdf = std::exp(-z * z / (2.0 * sigma2)) / std::sqrt(2.0 * 3.14159265358979323846 * sigma2);
        const double g_same = 1.0;  // relative to g(z)
        const double g_other = std::exp(-((z + 2.0 * amplitude) * (z + 2.0 * amplitude) - z * z) / (2.0 * sigma2));
        const double term = -std::log2(g_same / (g_same + g_other));
        const double w = (i == 0 || i == steps) ? 0.5 : 1.0;
        acc += w * pdf * term;
    }
    return acc * dz;
}

}  // namespace

TEST_CASE("gauss-hermite rule moments") {
    const double sqrt_pi = std::sqrt(3.14159265358979323846);
    for (int n : {5, 16, 40}) {
        const GaussHermite gh = gauss_hermite(n);
        double m0 = 0.0, m2 = 0.0, m4 = 0.0;
        for (std::size_t i = 0; i < gh.nodes.size(); ++i) {
            m0 += gh.weights[i];
            m2 += gh.weights[i] * gh.nodes[i] * gh.nodes[i];
            m4 += gh.weights[i] * std::pow(gh.nodes[i], 4.0);
            if (i > 0) CHECK(gh.nodes[i] > gh.nodes[i - 1]);
            CHECK(gh.weights[i] > 0.0);
        }
        CHECK(m0 == doctest::Approx(sqrt_pi).epsilon(1e-12));
        CHECK(m2 == doctest::Approx(sqrt_pi / 2.0).epsilon(1e-12));
        CHECK(m4 == doctest::Approx(3.0 * sqrt_pi / 4.0).epsilon(1e-12));
    }
}

TEST_CASE("gaussian capacity") {
    CHECK(gaussian_capacity_bpqs(SnrSpec::from_db(0.0)) == doctest::Approx(1.0));
    CHECK(gaussian_capacity_bpqs(SnrSpec::from_db(10.0)) == doctest::Approx(std::log2(11.0)));
    double prev = 0.0;
    for (double db = -10.0; db <= 26.0; db += 2.0) {
        const double c = gaussian_capacity_bpqs(SnrSpec::from_db(db));
        CHECK(c > prev);
        prev = c;
    }
    CHECK_THROWS_AS(gaussian_capacity_bpqs(SnrSpec::noiseless()), std::invalid_argument);
}

TEST_CASE("binary antipodal rate at 0 dB against a trapezoid reference") {
    ShapedSource bpsk = normalized_uniform(2);
    const SnrSpec snr = SnrSpec::from_db(0.0);

    const double loss = bpsk_loss_trapezoid(bpsk.scale, snr.sigma2);
    const double per_dim_ref = 1.0 - loss;

    const double oracle = exact_rate_oracle(bpsk, snr.sigma2, MetricKind::Smd4D);
    CHECK(oracle / 4.0 == doctest::Approx(per_dim_ref).epsilon(1e-7));
    CHECK(oracle / 4.0 == doctest::Approx(0.4861).epsilon(2e-3));

    // one label bit per dimension: bit-metric and symbol-metric coincide
    const double bmd = exact_rate_oracle(bpsk, snr.sigma2, MetricKind::Bmd1D);
    CHECK(bmd == doctest::Approx(oracle).epsilon(1e-9));

    // Monte Carlo within 3 standard errors
    const SymbolStream xs = draw_symbols(bpsk, 100000, 777);
    const ReceiveStream ys = add_noise(bpsk, xs, snr, 778);
    const RateEstimate est = achievable_rate(DecodingMetric(MetricKind::Smd4D, bpsk, snr.sigma2), xs, ys);
    CHECK(std::abs(est.bits_per_4d - oracle) <= 3.0 * est.stderr_bits_4d);
}

TEST_CASE("metric construction guards") {
    ShapedSource src = normalized_lut(4, 2);
    CHECK_THROWS_AS(DecodingMetric(MetricKind::Smd4D, src, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(DecodingMetric(MetricKind::Smd4D, src, -1.0), std::invalid_argument);

    ShapedSource raw = lut_source(build_lut(build_ask(4), 2));  // not normalized
    CHECK_THROWS_AS(DecodingMetric(MetricKind::Smd4D, raw, 0.1), std::invalid_argument);

    ShapedSource unlabeled = src;
    unlabeled.labeling = Labeling4D{};
    CHECK_THROWS_AS(DecodingMetric(MetricKind::Bmd4D, unlabeled, 0.1), std::invalid_argument);
    CHECK_NOTHROW(DecodingMetric(MetricKind::Smd4D, unlabeled, 0.1));
}

TEST_CASE("monte carlo agrees with the quadrature oracle for every kind") {
    const std::size_t K = 40000;
    int case_id = 0;
    for (const ShapedSource& src : {normalized_lut(4, 2), normalized_uniform(4)}) {
        for (double snr_db : {2.0, 10.0}) {
            const SnrSpec snr = SnrSpec::from_db(snr_db);
            const SymbolStream xs = draw_symbols(src, K, 100 + case_id);
            const ReceiveStream ys = add_noise(src, xs, snr, 200 + case_id);
            ++case_id;
            for (MetricKind kind :
                 {MetricKind::Smd4D, MetricKind::Bmd4D, MetricKind::Bmd2D, MetricKind::Bmd1D}) {
                const DecodingMetric metric(kind, src, snr.sigma2);
                const RateEstimate est = achievable_rate(metric, xs, ys);
                const double oracle = exact_rate_oracle(src, snr.sigma2, kind);
                INFO(metric_name(kind), " at ", snr_db, " dB, source ", src.name);
                CHECK(std::abs(est.bits_per_4d - oracle) <= 4.0 * est.stderr_bits_4d);
            }
        }
    }
}

namespace {

// Direct long-double evaluation of each metric definition, with none of the
// production scaling machinery. Gaussian kernels unnormalized; constants
// cancel in the ratio.
double direct_loss(const ShapedSource& s, MetricKind kind, std::uint32_t xi,
                   const std::array<double, 4>& y, double sigma2) {
    const auto g = [&](int i, int d) -> long double {
        const long double diff = y[static_cast<std::size_t>(d)] - s.coord(static_cast<std::size_t>(i), d);
        return std::exp(static_cast<long double>(-diff * diff / (2.0 * sigma2)));
    };
    const std::size_t n = s.size();
    const int b = s.ask.bits_per_dim;

    std::vector<long double> q(n, 0.0L);
    if (kind == MetricKind::Smd4D) {
        for (std::size_t i = 0; i < n; ++i) {
            q[i] = s.pmf[i];
            for (int d = 0; d < 4; ++d) q[i] *= g(static_cast<int>(i), d);
        }
    } else {
        // dims grouped per scope; bit metrics use the scope marginal and the
        // scope's own likelihood factors
        std::vector<std::vector<int>> scopes;
        if (kind == MetricKind::Bmd4D) scopes = {{0, 1, 2, 3}};
        if (kind == MetricKind::Bmd2D) scopes = {{0, 1}, {2, 3}};
        if (kind == MetricKind::Bmd1D) scopes = {{0}, {1}, {2}, {3}};
        q.assign(n, 1.0L);
        for (const auto& dims : scopes) {
            for (int d : dims) {
                for (int shift = 0; shift < b; ++shift) {
                    long double qb[2] = {0.0L, 0.0L};
                    for (std::size_t a = 0; a < n; ++a) {
                        long double w = s.pmf[a];
                        for (int dd : dims) w *= g(static_cast<int>(a), dd);
                        const auto sub = s.labeling.label_of_level[s.level_idx[a][static_cast<std::size_t>(d)]];
                        qb[(sub >> shift) & 1u] += w;
                    }
                    for (std::size_t i = 0; i < n; ++i) {
                        const auto sub = s.labeling.label_of_level[s.level_idx[i][static_cast<std::size_t>(d)]];
                        q[i] *= qb[(sub >> shift) & 1u];
                    }
                }
            }
        }
    }
    long double den = 0.0L;
    for (std::size_t i = 0; i < n; ++i) den += q[i];
    return static_cast<double>(-(std::log2(q[xi]) - std::log2(den)));
}

}  // namespace

TEST_CASE("metrics match a direct evaluation of their definitions") {
    for (const ShapedSource& src : {normalized_lut(4, 2), normalized_lut(8, 3)}) {
        for (double snr_db : {4.0, 12.0}) {
            const SnrSpec snr = SnrSpec::from_db(snr_db);
            const SymbolStream xs = draw_symbols(src, 40, 71);
            const ReceiveStream ys = add_noise(src, xs, snr, 72);
            for (MetricKind kind :
                 {MetricKind::Smd4D, MetricKind::Bmd4D, MetricKind::Bmd2D, MetricKind::Bmd1D}) {
                const DecodingMetric metric(kind, src, snr.sigma2);
                auto ws = metric.make_workspace();
                for (std::size_t i = 0; i < xs.indices.size(); ++i) {
                    const double mine = metric.loss(xs.indices[i], ys.y[i], ws);
                    const double ref = direct_loss(src, kind, xs.indices[i], ys.y[i], snr.sigma2);
                    INFO(src.name, " ", metric_name(kind), " at ", snr_db, " dB, sample ", i);
                    CHECK(mine == doctest::Approx(ref).epsilon(1e-8));
                }
            }
        }
    }
}

TEST_CASE("oracle approaches the entropy as noise vanishes") {
    ShapedSource src = normalized_lut(4, 2);
    CHECK(exact_rate_oracle(src, 1e-4, MetricKind::Smd4D) ==
          doctest::Approx(src.entropy_bits).epsilon(1e-9));
    CHECK(exact_rate_oracle(src, 1e-4, MetricKind::Bmd4D) ==
          doctest::Approx(src.entropy_bits).epsilon(1e-9));
}

TEST_CASE("metric names round-trip and reject junk") {
    for (MetricKind kind :
         {MetricKind::Smd4D, MetricKind::Bmd4D, MetricKind::Bmd2D, MetricKind::Bmd1D}) {
        CHECK(metric_from_name(metric_name(kind)) == kind);
    }
    CHECK(metric_from_name("smd") == MetricKind::Smd4D);
    CHECK(metric_from_name("bmd_2d") == MetricKind::Bmd2D);
    CHECK_THROWS_AS(metric_from_name("bmd3d"), std::invalid_argument);
}

TEST_CASE("metric ordering holds on shared streams") {
    ShapedSource src = normalized_lut(4, 2);
    const SnrSpec snr = SnrSpec::from_db(6.0);
    const SymbolStream xs = draw_symbols(src, 50000, 61);
    const ReceiveStream ys = add_noise(src, xs, snr, 62);
    const RateEstimate smd = achievable_rate(DecodingMetric(MetricKind::Smd4D, src, snr.sigma2), xs, ys);
    const RateEstimate bmd4 = achievable_rate(DecodingMetric(MetricKind::Bmd4D, src, snr.sigma2), xs, ys);
    const RateEstimate bmd2 = achievable_rate(DecodingMetric(MetricKind::Bmd2D, src, snr.sigma2), xs, ys);
    CHECK(bmd4.bits_per_4d <= smd.bits_per_4d + 3.0 * (bmd4.stderr_bits_4d + smd.stderr_bits_4d));
    CHECK(bmd2.bits_per_4d <= bmd4.bits_per_4d + 3.0 * (bmd2.stderr_bits_4d + bmd4.stderr_bits_4d));
}

TEST_CASE("metric ordering at oracle precision") {
    for (const ShapedSource& src : {normalized_lut(4, 2), normalized_lut(4, 3), normalized_uniform(4)}) {
        for (double snr_db : {0.0, 6.0, 14.0}) {
            const double sigma2 = SnrSpec::from_db(snr_db).sigma2;
            const double smd = exact_rate_oracle(src, sigma2, MetricKind::Smd4D);
            const double bmd4 = exact_rate_oracle(src, sigma2, MetricKind::Bmd4D);
            const double bmd2 = exact_rate_oracle(src, sigma2, MetricKind::Bmd2D);
            INFO(src.name, " at ", snr_db, " dB");
            CHECK(bmd4 <= smd + 1e-9);
            CHECK(bmd2 <= bmd4 + 1e-9);
        }
    }
}

TEST_CASE("product laws: 2D and 4D bit metrics coincide, paths agree") {
    MetricOptions joint_only;
    joint_only.allow_factorized = false;

    for (const ShapedSource& src :
         {normalized_uniform(4), [] {
              ShapedSource s = mb_product_source(build_ask(8), 0.05);
              normalize(s);
              return s;
          }()}) {
        const double sigma2 = SnrSpec::from_db(7.0).sigma2;
        const DecodingMetric m4(MetricKind::Bmd4D, src, sigma2, joint_only);
        const DecodingMetric m2(MetricKind::Bmd2D, src, sigma2, joint_only);
        const DecodingMetric m1(MetricKind::Bmd1D, src, sigma2, joint_only);
        const DecodingMetric m1_fast(MetricKind::Bmd1D, src, sigma2);
        const DecodingMetric smd(MetricKind::Smd4D, src, sigma2, joint_only);
        const DecodingMetric smd_fast(MetricKind::Smd4D, src, sigma2);
        CHECK_FALSE(m4.factorized());
        CHECK(m1_fast.factorized());

        const SymbolStream xs = draw_symbols(src, 200, 31);
        const ReceiveStream ys = add_noise(src, xs, SnrSpec::from_db(7.0), 32);
        auto w4 = m4.make_workspace();
        auto w2 = m2.make_workspace();
        auto w1 = m1.make_workspace();
        auto wf = m1_fast.make_workspace();
        auto ws = smd.make_workspace();
        auto wsf = smd_fast.make_workspace();
        for (std::size_t i = 0; i < xs.indices.size(); ++i) {
            const double l4 = m4.loss(xs.indices[i], ys.y[i], w4);
            const double l2 = m2.loss(xs.indices[i], ys.y[i], w2);
            const double l1 = m1.loss(xs.indices[i], ys.y[i], w1);
            const double lf = m1_fast.loss(xs.indices[i], ys.y[i], wf);
            CHECK(l2 == doctest::Approx(l4).epsilon(1e-9));
            CHECK(l1 == doctest::Approx(l4).epsilon(1e-9));
            CHECK(lf == doctest::Approx(l1).epsilon(1e-9));
            CHECK(smd_fast.loss(xs.indices[i], ys.y[i], wsf) ==
                  doctest::Approx(smd.loss(xs.indices[i], ys.y[i], ws)).epsilon(1e-9));
        }
    }
}

TEST_CASE("noiseless limit recovers the source entropy") {
    ShapedSource src = normalized_lut(4, 2);
    const DecodingMetric metric(MetricKind::Smd4D, src, 1e-4);
    const SymbolStream xs = draw_symbols(src, 500, 3);
    ReceiveStream ys;
    ys.snr = SnrSpec::noiseless();
    for (auto idx : xs.indices)
        ys.y.push_back({src.coord(idx, 0), src.coord(idx, 1), src.coord(idx, 2), src.coord(idx, 3)});
    const RateEstimate est = achievable_rate(metric, xs, ys);
    CHECK(est.bits_per_4d == doctest::Approx(src.entropy_bits).epsilon(1e-9));
}

TEST_CASE("deep noise clips to zero") {
    ShapedSource src = normalized_uniform(4);
    const SnrSpec snr = SnrSpec::from_db(-40.0);
    const SymbolStream xs = draw_symbols(src, 5000, 4);
    const ReceiveStream ys = add_noise(src, xs, snr, 5);
    const RateEstimate est = achievable_rate(DecodingMetric(MetricKind::Smd4D, src, snr.sigma2), xs, ys);
    CHECK(est.bits_per_4d == 0.0);
    CHECK(est.raw_bits_per_4d < 0.0);
    CHECK(est.stderr_bits_4d > 0.0);
}

TEST_CASE("losses are invariant under a global sign flip") {
    ShapedSource src = normalized_lut(4, 3);
    // locate the flipped index of every point
    auto flipped_index = [&](std::uint32_t i) {
        for (std::uint32_t j = 0; j < src.size(); ++j) {
            bool match = true;
            for (int d = 0; d < 4; ++d) match = match && src.level(j, d) == -src.level(i, d);
            if (match) return j;
        }
        REQUIRE(false);
        return 0u;
    };
    const SymbolStream xs = draw_symbols(src, 50, 8);
    const ReceiveStream ys = add_noise(src, xs, SnrSpec::from_db(5.0), 9);
    for (MetricKind kind : {MetricKind::Smd4D, MetricKind::Bmd4D, MetricKind::Bmd2D}) {
        const DecodingMetric metric(kind, src, SnrSpec::from_db(5.0).sigma2);
        auto ws = metric.make_workspace();
        for (std::size_t i = 0; i < xs.indices.size(); ++i) {
            const std::array<double, 4> neg{-ys.y[i][0], -ys.y[i][1], -ys.y[i][2], -ys.y[i][3]};
            const double a = metric.loss(xs.indices[i], ys.y[i], ws);
            const double b = metric.loss(flipped_index(xs.indices[i]), neg, ws);
            CHECK(a == doctest::Approx(b).epsilon(1e-9));
        }
    }
}

TEST_CASE("y = 0 leaves sign orbits equiprobable under the symbol metric") {
    ShapedSource src = normalized_lut(4, 2);
    const DecodingMetric metric(MetricKind::Smd4D, src, SnrSpec::from_db(3.0).sigma2);
    const auto values = metric.log_metric_values({0.0, 0.0, 0.0, 0.0});
    // points i and i + t*16 share the tuple (layout: sign block of 2^k entries)
    const std::size_t tuples = 4;
    for (std::size_t t = 0; t < tuples; ++t) {
        for (std::size_t s = 1; s < 16; ++s) {
            CHECK(values[t] == doctest::Approx(values[t + s * tuples]).epsilon(1e-12));
        }
    }
}

TEST_CASE("rate is monotone in SNR under common randomness") {
    ShapedSource src = normalized_uniform(4);
    const std::size_t K = 30000;
    const SymbolStream xs = draw_symbols(src, K, 21);
    // one fixed noise realization, scaled per SNR
    std::vector<std::array<double, 4>> z(K);
    Rng rng(22);
    for (auto& v : z) {
        const auto p1 = rng.normal_pair();
        const auto p2 = rng.normal_pair();
        v = {p1[0], p1[1], p2[0], p2[1]};
    }
    double prev_rate = -1.0, prev_err = 0.0;
    for (double db : {0.0, 4.0, 8.0, 12.0, 16.0}) {
        const SnrSpec snr = SnrSpec::from_db(db);
        ReceiveStream ys;
        ys.snr = snr;
        ys.y.resize(K);
        const double sigma = std::sqrt(snr.sigma2);
        for (std::size_t i = 0; i < K; ++i)
            for (int d = 0; d < 4; ++d)
                ys.y[i][static_cast<std::size_t>(d)] =
                    src.coord(xs.indices[i], d) + sigma * z[i][static_cast<std::size_t>(d)];
        const RateEstimate est =
            achievable_rate(DecodingMetric(MetricKind::Bmd1D, src, snr.sigma2), xs, ys);
        CHECK(est.bits_per_4d >= prev_rate - 3.0 * (est.stderr_bits_4d + prev_err));
        prev_rate = est.bits_per_4d;
        prev_err = est.stderr_bits_4d;
    }
}

TEST_CASE("achievable_rate input validation") {
    ShapedSource src = normalized_uniform(4);
    const DecodingMetric metric(MetricKind::Smd4D, src, 0.25);
    SymbolStream xs;
    ReceiveStream ys;
    CHECK_THROWS_AS(achievable_rate(metric, xs, ys), std::invalid_argument);
    xs.indices = {0, 1};
    ys.y = {{0, 0, 0, 0}};
    CHECK_THROWS_AS(achievable_rate(metric, xs, ys), std::invalid_argument);
    ys.y.push_back({0, 0, 0, 0});
    CHECK_NOTHROW(achievable_rate(metric, xs, ys));
    xs.indices = {0, 999999};
    CHECK_THROWS_AS(achievable_rate(metric, xs, ys), std::invalid_argument);
}

TEST_CASE("oracle cost guard on coupled constellations") {
    ShapedSource big = normalized_lut(16, 9);  // 8192 points, coupled
    CHECK_THROWS_AS(exact_rate_oracle(big, 0.05, MetricKind::Bmd4D), std::invalid_argument);
    // factorized sources of any size are fine
    ShapedSource uni = normalized_uniform(16);
    CHECK_NOTHROW(exact_rate_oracle(uni, 0.05, MetricKind::Bmd1D));
}

TEST_CASE("pairwise sum is deterministic and exactly sums integers") {
    std::vector<double> v;
    for (int i = 0; i < 1000; ++i) v.push_back(static_cast<double>(i % 17) - 8.0);
    const double a = pairwise_sum(v);
    const double b = pairwise_sum(v);
    CHECK(a == b);
    double plain = 0.0;
    for (double x : v) plain += x;
    CHECK(a == doctest::Approx(plain).epsilon(1e-12));
}
