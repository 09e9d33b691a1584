#include <benchmark/benchmark.h>

#include "pas4d/lut_dm.hpp"

using namespace pas4d;

static void BM_BuildLut(benchmark::State& state) {
    const AskAlphabet ask = build_ask(16);
    const int k = static_cast<int>(state.range(0));
    for (auto _ : state) {
        LutDm dm = build_lut(ask, k);
        benchmark::DoNotOptimize(dm);
    }
}
BENCHMARK(BM_BuildLut)->Arg(9)->Arg(12);

static void BM_LutEncodeDecode(benchmark::State& state) {
    const LutDm dm = build_lut(build_ask(16), 9);
    std::uint32_t bits = 0;
    for (auto _ : state) {
        const AmplitudeTuple t = lut_encode(dm, bits);
        benchmark::DoNotOptimize(lut_decode(dm, t));
        bits = (bits + 1) & 511u;
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_LutEncodeDecode);

static void BM_LutSource(benchmark::State& state) {
    const LutDm dm = build_lut(build_ask(16), 9);
    for (auto _ : state) {
        ShapedSource src = lut_source(dm);
        benchmark::DoNotOptimize(src);
    }
}
BENCHMARK(BM_LutSource);

BENCHMARK_MAIN();
