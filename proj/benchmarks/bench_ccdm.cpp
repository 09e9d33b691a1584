#include <benchmark/benchmark.h>

#include "pas4d/ccdm.hpp"
#include "pas4d/random.hpp"

using namespace pas4d;

namespace {

struct Block {
    CcdmCodec codec;
    std::vector<std::uint8_t> bits;
    std::vector<int> sequence;

    explicit Block(int n)
        : codec(quantize_composition(mb_pmf(build_ask(16), fit_mb_entropy(build_ask(16), 2.25)), n)) {
        Rng rng(5);
        bits.resize(static_cast<std::size_t>(codec.input_length()));
        for (auto& b : bits) b = static_cast<std::uint8_t>(rng.bit());
        sequence = codec.encode(bits);
    }
};

Block& block_of(int n) {
    static Block b600{600};
    static Block b6000{6000};
    return n == 600 ? b600 : b6000;
}

}  // namespace

static void BM_CcdmEncode(benchmark::State& state) {
    Block& b = block_of(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto seq = b.codec.encode(b.bits);
        benchmark::DoNotOptimize(seq);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CcdmEncode)->Arg(600)->Arg(6000)->Unit(benchmark::kMillisecond);

static void BM_CcdmDecode(benchmark::State& state) {
    Block& b = block_of(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto bits = b.codec.decode(b.sequence);
        benchmark::DoNotOptimize(bits);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CcdmDecode)->Arg(600)->Arg(6000)->Unit(benchmark::kMillisecond);

static void BM_CcdmInputLength(benchmark::State& state) {
    const Composition comp =
        quantize_composition(mb_pmf(build_ask(16), fit_mb_entropy(build_ask(16), 2.25)), 6000);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ccdm_input_length(comp));
    }
}
BENCHMARK(BM_CcdmInputLength)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
