#include <benchmark/benchmark.h>

#include "pas4d/ccdm.hpp"
#include "pas4d/channel.hpp"
#include "pas4d/lut_dm.hpp"
#include "pas4d/rates.hpp"

using namespace pas4d;

namespace {

struct Fixture {
    ShapedSource source;
    SymbolStream xs;
    ReceiveStream ys;
    SnrSpec snr;

    Fixture(ShapedSource src, double snr_db, std::size_t samples)
        : source(std::move(src)), snr(SnrSpec::from_db(snr_db)) {
        normalize(source);
        xs = draw_symbols(source, samples, 1);
        ys = add_noise(source, xs, snr, 2);
    }
};

void run_metric(benchmark::State& state, const Fixture& fx, MetricKind kind) {
    const DecodingMetric metric(kind, fx.source, fx.snr.sigma2);
    auto ws = metric.make_workspace();
    std::size_t i = 0;
    for (auto _ : state) {
        const double loss = metric.loss(fx.xs.indices[i], fx.ys.y[i], ws);
        benchmark::DoNotOptimize(loss);
        i = (i + 1) % fx.xs.indices.size();
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}

const Fixture& lut_fixture(int k) {
    static Fixture k5{lut_source(build_lut(build_ask(16), 5)), 10.0, 4096};
    static Fixture k9{lut_source(build_lut(build_ask(16), 9)), 16.0, 4096};
    return k == 5 ? k5 : k9;
}

const Fixture& uniform_fixture() {
    static Fixture fx{uniform_product_source(build_ask(16)), 16.0, 4096};
    return fx;
}

}  // namespace

static void BM_Bmd4D_Lut512(benchmark::State& state) { run_metric(state, lut_fixture(5), MetricKind::Bmd4D); }
BENCHMARK(BM_Bmd4D_Lut512);

static void BM_Bmd4D_Lut8192(benchmark::State& state) { run_metric(state, lut_fixture(9), MetricKind::Bmd4D); }
BENCHMARK(BM_Bmd4D_Lut8192);

static void BM_Bmd2D_Lut8192(benchmark::State& state) { run_metric(state, lut_fixture(9), MetricKind::Bmd2D); }
BENCHMARK(BM_Bmd2D_Lut8192);

static void BM_Smd4D_Lut8192(benchmark::State& state) { run_metric(state, lut_fixture(9), MetricKind::Smd4D); }
BENCHMARK(BM_Smd4D_Lut8192);

static void BM_Bmd1D_Uniform256QAM(benchmark::State& state) {
    run_metric(state, uniform_fixture(), MetricKind::Bmd1D);
}
BENCHMARK(BM_Bmd1D_Uniform256QAM);

static void BM_Oracle_Bmd1D_Mb16(benchmark::State& state) {
    ShapedSource src = mb_product_source(build_ask(16), 0.03);
    normalize(src);
    for (auto _ : state) {
        benchmark::DoNotOptimize(exact_rate_oracle(src, 0.05, MetricKind::Bmd1D));
    }
}
BENCHMARK(BM_Oracle_Bmd1D_Mb16);

BENCHMARK_MAIN();
