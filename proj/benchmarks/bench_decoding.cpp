#include <benchmark/benchmark.h>

#include "locdec/decoder.hpp"

using namespace locdec;

namespace {

void BM_PairedTrialRepetition(benchmark::State& state) {
    const int L = static_cast<int>(state.range(0));
    const DecodingGraph graph = build_repetition_graph(L, L);
    const RateDistribution dist = RateDistribution::bimodal(0.091, 0.5);
    std::uint64_t trial = 0;
    for (auto _ : state) {
        RngStream rng(derive_seed(1, trial++));
        const PairedTrialOutcome o =
            run_paired_trial(graph, dist, 0.091, TemporalMode::Dynamic, rng);
        benchmark::DoNotOptimize(o);
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_PairedTrialRepetition)->Arg(9)->Arg(17)->Arg(25)->Unit(benchmark::kMillisecond);

void BM_PairedTrialSurface(benchmark::State& state) {
    const int L = static_cast<int>(state.range(0));
    const DecodingGraph graph = build_surface_graph(L, L);
    const RateDistribution dist = RateDistribution::bimodal(0.024, 0.5);
    std::uint64_t trial = 0;
    for (auto _ : state) {
        RngStream rng(derive_seed(2, trial++));
        const PairedTrialOutcome o =
            run_paired_trial(graph, dist, 0.024, TemporalMode::Dynamic, rng);
        benchmark::DoNotOptimize(o);
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_PairedTrialSurface)->Arg(5)->Arg(7)->Arg(11)->Unit(benchmark::kMillisecond);

void BM_DefectGraphBuild(benchmark::State& state) {
    const int L = static_cast<int>(state.range(0));
    const DecodingGraph graph = build_repetition_graph(L, L);
    const RateDistribution dist = RateDistribution::bimodal(0.091, 0.5);
    RngStream rng(3);
    const NoiseAssignment a = assign_rates(graph, dist, 0.091, TemporalMode::Dynamic, rng);
    const ErrorConfiguration e = sample_errors(a, rng);
    const Syndrome s = extract_syndrome(graph, e);
    const std::vector<double> w = make_weight_map(graph, a, DecoderMode::LocalRate);
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_defect_graph(s, graph, w));
    }
    state.counters["defects"] = static_cast<double>(s.defects.size());
}
BENCHMARK(BM_DefectGraphBuild)->Arg(9)->Arg(17)->Arg(25)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
