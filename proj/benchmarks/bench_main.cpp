#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "litcomplex/arc_complexity.hpp"
#include "litcomplex/corpus.hpp"
#include "litcomplex/forest.hpp"
#include "litcomplex/rng.hpp"
#include "litcomplex/stylometry.hpp"
#include "litcomplex/text.hpp"

using namespace litcomplex;

namespace {

std::vector<double> noise(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> x(n);
    for (auto& v : x) v = rng.uniform() - 0.5;
    return x;
}

const std::string& hamlet() {
    static const std::string text = [] {
        std::ifstream in(LITCOMPLEX_BENCH_TEXT, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }();
    return text;
}

}  // namespace

static void BM_ApproximateEntropy(benchmark::State& state) {
    const auto x = noise(static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(approximate_entropy(x));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ApproximateEntropy)->RangeMultiplier(2)->Range(250, 4000)->Complexity();

static void BM_Hurst(benchmark::State& state) {
    const auto x = noise(static_cast<std::size_t>(state.range(0)), 2);
    for (auto _ : state) benchmark::DoNotOptimize(hurst(x));
}
BENCHMARK(BM_Hurst)->Arg(1000)->Arg(5000)->Arg(20000);

static void BM_Tokenize(benchmark::State& state) {
    const auto& text = hamlet();
    for (auto _ : state) benchmark::DoNotOptimize(tokenize(text));
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_Tokenize);

static void BM_Pipeline(benchmark::State& state) {
    const auto pipe = TextPipeline::bundled();
    const auto& text = hamlet();
    for (auto _ : state) benchmark::DoNotOptimize(pipe.process(text));
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_Pipeline);

static void BM_Bzip2(benchmark::State& state) {
    const auto& text = hamlet();
    for (auto _ : state) benchmark::DoNotOptimize(bzip2_compressed_size(text));
}
BENCHMARK(BM_Bzip2);

static void BM_ForestFit(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0)), d = 18;
    Rng rng(3);
    Matrix x(n, d);
    std::vector<std::string> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = i % 2 ? "pos" : "neg";
        for (std::size_t j = 0; j < d; ++j) x(i, j) = rng.uniform() + (i % 2 && j < 4 ? 0.3 : 0.0);
    }
    ForestConfig cfg;
    cfg.n_trees = 100;
    cfg.threads = 1;
    for (auto _ : state) benchmark::DoNotOptimize(ForestModel::fit(x, y, cfg));
}
BENCHMARK(BM_ForestFit)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
