#include <benchmark/benchmark.h>

#include "flatcurve/builders.hpp"
#include "flatcurve/kvolsearch.hpp"
#include "flatcurve/parallel.hpp"

using namespace flatcurve;

static void BM_EnumerateNgon(benchmark::State& state) {
    const auto s = regular_ngon(static_cast<int>(state.range(0)));
    const double lmax = static_cast<double>(state.range(1));
    size_t count = 0;
    for (auto _ : state) {
        auto scs = enumerate_saddle_connections(s, lmax);
        count = scs.size();
        benchmark::DoNotOptimize(scs);
    }
    state.counters["connections"] = static_cast<double>(count);
}
BENCHMARK(BM_EnumerateNgon)->Args({10, 4})->Args({10, 8})->Args({14, 6})->Unit(benchmark::kMillisecond);

static void BM_EnumerateBouwMoller(benchmark::State& state) {
    const auto s = bouw_moller(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_saddle_connections(s, 5.0));
}
BENCHMARK(BM_EnumerateBouwMoller)->Args({4, 8})->Args({8, 8})->Unit(benchmark::kMillisecond);

static void BM_CurvePairIntersections(benchmark::State& state) {
    const auto s = regular_ngon(10);
    const auto scs = enumerate_saddle_connections(s, 4.0);
    const auto chains = enumerate_closed_curves(scs, 2);
    std::vector<ClosedCurve> curves;
    for (size_t i = 0; i < chains.size() && curves.size() < 200; i += 3) curves.push_back(to_closed_curve(scs, chains[i]));
    for (auto _ : state)
        for (size_t i = 0; i + 1 < curves.size(); ++i)
            benchmark::DoNotOptimize(algebraic_intersection(s, curves[i], curves[i + 1]));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(curves.size() - 1));
}
BENCHMARK(BM_CurvePairIntersections)->Unit(benchmark::kMillisecond);

static void BM_SupRatio(benchmark::State& state) {
    set_worker_count(static_cast<int>(state.range(1)));
    const auto s = regular_ngon(10);
    SearchConfig cfg;
    cfg.lmax = static_cast<double>(state.range(0));
    cfg.max_components = 2;
    for (auto _ : state) benchmark::DoNotOptimize(sup_ratio(s, cfg));
    set_worker_count(0);
}
BENCHMARK(BM_SupRatio)->Args({4, 1})->Args({5, 1})->Args({5, 4})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_MAIN();
