#include <benchmark/benchmark.h>

#include "flowmag/cover.hpp"
#include "flowmag/features.hpp"
#include "flowmag/flow.hpp"
#include "flowmag/metric.hpp"
#include "flowmag/random_graphs.hpp"
#include "flowmag/spectral.hpp"

using namespace flowmag;

namespace {

Digraph plastic() {
    return Digraph(3, {{0, 1}, {1, 0}, {1, 2}, {2, 0}});
}

void BM_SpectralRadius(benchmark::State& state) {
    const Digraph g = erdos_renyi(static_cast<VertexId>(state.range(0)), 0.04, 7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(spectral_radius(g).value);
    }
}
BENCHMARK(BM_SpectralRadius)->Arg(50)->Arg(100)->Arg(200);

void BM_CharPoly(benchmark::State& state) {
    const Digraph g = erdos_renyi(static_cast<VertexId>(state.range(0)), 0.15, 7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(char_poly(g).degree());
    }
}
BENCHMARK(BM_CharPoly)->Arg(10)->Arg(20)->Arg(40);

void BM_TropicalSimilarityMatrix(benchmark::State& state) {
    const FlowGraph f = random_flow_graph(11, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(tropical_similarity_matrix(f).z.data());
    }
    state.counters["edges"] = static_cast<double>(f.graph.num_edges());
}
BENCHMARK(BM_TropicalSimilarityMatrix)->Arg(12)->Arg(20)->Arg(32);

void BM_BallCounts(benchmark::State& state) {
    const Digraph g = plastic();
    for (auto _ : state) {
        benchmark::DoNotOptimize(ball_size_power_formula(g, 0, static_cast<int>(state.range(0))));
    }
}
BENCHMARK(BM_BallCounts)->Arg(10)->Arg(100)->Arg(200);

void BM_Weighting(benchmark::State& state) {
    const Digraph g = largest_weak_component(
        erdos_renyi(static_cast<VertexId>(state.range(0)), 0.04, 13));
    const SimilarityMatrix z = similarity_matrix(shortest_path_matrix(g), 0.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(weighting(z).magnitude);
    }
}
BENCHMARK(BM_Weighting)->Arg(50)->Arg(100);

void BM_FeatureTable(benchmark::State& state) {
    const Digraph g = largest_weak_component(erdos_renyi(100, 0.04, 17));
    for (auto _ : state) {
        benchmark::DoNotOptimize(feature_table(g).columns.size());
    }
}
BENCHMARK(BM_FeatureTable);

void BM_Trial(benchmark::State& state) {
    const Digraph ambient = largest_weak_component(erdos_renyi(100, 0.04, 19));
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(trial(ambient, 0.5, seed++).shared_vertices);
    }
}
BENCHMARK(BM_Trial);

} // namespace

BENCHMARK_MAIN();
