// Serial reference kernels against their OpenMP counterparts on a synthetic
// preferential-attachment network.

#include <ranksurprise/centrality.hpp>
#include <ranksurprise/parallel.hpp>
#include <ranksurprise/surprise.hpp>
#include <ranksurprise/synth.hpp>

#include <benchmark/benchmark.h>

#include <map>

using namespace ranksurprise;

namespace {

const SnapshotSeries& fixture(int arrivals) {
    static std::map<int, SnapshotSeries> cache;
    auto it = cache.find(arrivals);
    if (it == cache.end()) {
        SynthConfig config;
        config.seed = 42;
        config.initial_nodes = 100;
        config.steps = 10;
        config.arrivals_per_step = arrivals;
        config.edges_per_arrival = 5;
        const auto data = generate(config);
        it = cache.emplace(arrivals, build_snapshots(data.edges, SnapshotConfig::covering(data.edges, 1))).first;
    }
    return it->second;
}

const GraphSnapshot& last(int arrivals) { return fixture(arrivals).snapshots.back(); }

void BM_PagerankSerial(benchmark::State& state) {
    const auto& g = last(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(serial::pagerank(g));
    state.counters["nodes"] = static_cast<double>(g.node_count());
}

void BM_PagerankParallel(benchmark::State& state) {
    const auto& g = last(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(pagerank(g));
    state.counters["nodes"] = static_cast<double>(g.node_count());
    state.counters["threads"] = max_threads();
}

void BM_DisruptionSerial(benchmark::State& state) {
    const auto& g = last(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(serial::disruption_all(g));
}

void BM_DisruptionParallel(benchmark::State& state) {
    const auto& g = last(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(disruption_all(g));
    state.counters["threads"] = max_threads();
}

void BM_Trajectories(benchmark::State& state) {
    const auto& series = fixture(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(trajectories(series));
}

} // namespace

BENCHMARK(BM_PagerankSerial)->Arg(500)->Arg(5000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PagerankParallel)->Arg(500)->Arg(5000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DisruptionSerial)->Arg(500)->Arg(5000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DisruptionParallel)->Arg(500)->Arg(5000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Trajectories)->Arg(500)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
