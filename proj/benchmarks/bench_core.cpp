#include <benchmark/benchmark.h>

#include "anchorlab/analytic.hpp"
#include "anchorlab/price_models.hpp"
#include "anchorlab/strategy.hpp"

using namespace anchorlab;

static void BM_AnalyzeTwoPoint(benchmark::State& state) {
    const TwoPointModel m1{1.0, 0.11};
    const TwoPointModel m2{1.0, 0.07};
    for (auto _ : state) {
        auto result = analyze(m1, m2);
        benchmark::DoNotOptimize(result);
    }
}
BENCHMARK(BM_AnalyzeTwoPoint);

static void BM_StrategyStep(benchmark::State& state) {
    const auto a = sample_anchored_series({1.0, 0.11}, 4096, 1);
    const auto b = sample_anchored_series({1.0, 0.11}, 4096, 2);
    Strategy strategy(Mode::market_neutral, static_cast<int>(state.range(0)));
    std::size_t t = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(strategy.step(a.prices[t & 4095], b.prices[t & 4095]));
        ++t;
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_StrategyStep)->Arg(5)->Arg(15)->Arg(60);

static void BM_SampleAnchoredSeries(benchmark::State& state) {
    const TwoPointModel m{1.0, 0.11};
    for (auto _ : state) {
        auto series = sample_anchored_series(m, state.range(0), 7);
        benchmark::DoNotOptimize(series);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleAnchoredSeries)->Arg(1 << 12)->Arg(1 << 16);

BENCHMARK_MAIN();
