#include <benchmark/benchmark.h>

#include <random>

#include "bfds/analysis.hpp"
#include "bfds/config_graph.hpp"
#include "bfds/permsolve.hpp"
#include "bfds/reductions.hpp"

using namespace bfds;

namespace {

System ring(int n, int k, SelectionKind sel, ScheduleKind sch) {
    System sys(n, k);
    sys.selection.kind = sel;
    sys.schedule.kind = sch;
    for (int i = 1; i <= n; ++i) {
        sys.fn(i, 1) = NodeFunction::pos(i == 1 ? n : i - 1);
        for (int j = 2; j <= k; ++j) sys.fn(i, j) = NodeFunction::neg(i == n ? 1 : i + 1);
    }
    return sys;
}

// Bits of `pattern` repeat across the configuration, node 1 taking the lowest bit.
Config tiled(int n, unsigned pattern, int width) {
    Config c(n);
    for (int i = 0; i < n; ++i) c.set(i, (pattern >> (i % width)) & 1u);
    return c;
}

CnfFormula formula(int n, int m, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    CnfFormula f{n, {}};
    for (int j = 0; j < m; ++j) {
        std::vector<int> clause;
        for (int l = 0; l < 3; ++l) {
            const int v = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n));
            clause.push_back(rng() % 2 ? v : -v);
        }
        f.clauses.push_back(clause);
    }
    return f;
}

void BM_SuccessorsIndividualParallel(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto sys = ring(n, 2, SelectionKind::Individual, ScheduleKind::Parallel);
    const auto c = Config::from_index(n, 0x5);
    for (auto _ : state) benchmark::DoNotOptimize(successors(sys, c));
}
BENCHMARK(BM_SuccessorsIndividualParallel)->Arg(6)->Arg(10)->Arg(14);

void BM_SuccessorsArbitraryPermutation(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto sys = ring(n, 1, SelectionKind::Fixed, ScheduleKind::ArbitraryPermutation);
    const auto c = Config::from_index(n, 0x5);
    for (auto _ : state) benchmark::DoNotOptimize(successors(sys, c));
}
BENCHMARK(BM_SuccessorsArbitraryPermutation)->Arg(5)->Arg(7)->Arg(8);

void BM_BuildGraph(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto sys = ring(n, 2, SelectionKind::Coordinated, ScheduleKind::Parallel);
    for (auto _ : state) benchmark::DoNotOptimize(build_graph(sys));
}
BENCHMARK(BM_BuildGraph)->Arg(8)->Arg(12)->Arg(16);

void BM_BoundedReachGadget(benchmark::State& state) {
    const auto inst = reduce_3sat_unary_t3(formula(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), 7));
    for (auto _ : state) benchmark::DoNotOptimize(decide_instance(inst));
}
BENCHMARK(BM_BoundedReachGadget)->Args({4, 8})->Args({8, 20})->Args({12, 40});

void BM_RobustOneStepFast(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto sys = ring(n, 2, SelectionKind::Individual, ScheduleKind::ArbitraryPermutation);
    for (int i = 1; i <= n; i += 3) sys.fn(i, 2) = NodeFunction::any_of({1, n});
    const auto c = tiled(n, 0x15, 6);
    const auto d = tiled(n, 0x2a, 6);
    for (auto _ : state) benchmark::DoNotOptimize(robust_one_step_fast(sys, c, d));
}
BENCHMARK(BM_RobustOneStepFast)->Arg(8)->Arg(32)->Arg(128);

void BM_PermExists1Choice(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto sys = ring(n, 1, SelectionKind::Fixed, ScheduleKind::ArbitraryPermutation);
    for (int i = 1; i <= n; i += 4) sys.fn(i, 1) = NodeFunction::pos(i);
    const auto c = tiled(n, 0x1, 4);
    const auto d = tiled(n, 0x3, 4);
    for (auto _ : state) benchmark::DoNotOptimize(perm_exists_1choice_unary(sys, c, d));
}
BENCHMARK(BM_PermExists1Choice)->Arg(16)->Arg(256)->Arg(4096);

}  // namespace

BENCHMARK_MAIN();
