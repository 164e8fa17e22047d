#include <benchmark/benchmark.h>

#include "locdec/matching.hpp"
#include "locdec/rng.hpp"

using namespace locdec;

namespace {

MatchingInstance random_complete(int n, std::uint64_t seed) {
    RngStream rng(seed);
    MatchingInstance inst;
    inst.node_count = n;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            inst.add_pair(i, j, rng.uniform01());
        }
    }
    return inst;
}

void BM_MinWeightPerfectMatching(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const MatchingInstance inst = random_complete(n, 42);
    for (auto _ : state) {
        benchmark::DoNotOptimize(min_weight_perfect_matching(inst));
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_MinWeightPerfectMatching)
    ->RangeMultiplier(2)
    ->Range(16, 256)
    ->Complexity()
    ->Unit(benchmark::kMicrosecond);

void BM_BruteForceOracle(benchmark::State& state) {
    const MatchingInstance inst = random_complete(static_cast<int>(state.range(0)), 7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(brute_force_matching(inst));
    }
}
BENCHMARK(BM_BruteForceOracle)->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMicrosecond);

}  // namespace
