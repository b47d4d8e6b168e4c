#include <benchmark/benchmark.h>

#include "distcsp/brute.hpp"
#include "distcsp/polymorphism.hpp"
#include "distcsp/solver.hpp"

using namespace distcsp;

namespace {

Template dist12() { return Template("dist12", {RelationDef::tuples("E", 2, {{1}, {-1}, {2}, {-2}})}); }

Template dist13() { return Template("dist13", {RelationDef::tuples("R", 2, {{1}, {-1}, {3}, {-3}})}); }

Instance cycle(std::size_t n, const std::string& rel) {
    Instance inst{n, {}};
    for (std::size_t i = 0; i < n; ++i)
        inst.constraints.push_back({rel, {i, (i + 1) % n}});
    return inst;
}

Instance petersen() {
    Instance inst{10, {}};
    for (std::size_t i = 0; i < 5; ++i) {
        inst.constraints.push_back({"E", {i, (i + 1) % 5}});
        inst.constraints.push_back({"E", {i, i + 5}});
        inst.constraints.push_back({"E", {5 + i, 5 + (i + 2) % 5}});
    }
    return inst;
}

} // namespace

static void BM_Sumset(benchmark::State& state) {
    const auto n = state.range(0);
    std::vector<Offset> a, b;
    for (Offset i = 0; i < n; ++i) {
        a.push_back(3 * i);
        b.push_back(5 * i - n);
    }
    const OffsetSet sa(a), sb(b);
    for (auto _ : state)
        benchmark::DoNotOptimize(offsetset_sum(sa, sb));
    state.SetComplexityN(n);
}
BENCHMARK(BM_Sumset)->RangeMultiplier(4)->Range(4, 256)->Complexity();

static void BM_PropagateCycle(benchmark::State& state) {
    const auto t = dist13();
    const auto p = preprocess(cycle(static_cast<std::size_t>(state.range(0)), "R"), t);
    const auto comp = canonical_components(p)[0];
    for (auto _ : state) {
        auto m = initialize_pairs(p, comp);
        propagate(m);
        benchmark::DoNotOptimize(m.stats.proper_replacements);
    }
}
BENCHMARK(BM_PropagateCycle)->Arg(5)->Arg(9)->Arg(15);

static void BM_SolvePetersenAuto(benchmark::State& state) {
    const auto t = dist12();
    const auto inst = petersen();
    for (auto _ : state)
        benchmark::DoNotOptimize(solve(inst, t).verdict.kind);
}
BENCHMARK(BM_SolvePetersenAuto);

static void BM_BrutePetersen(benchmark::State& state) {
    const auto t = dist12();
    const auto inst = petersen();
    for (auto _ : state)
        benchmark::DoNotOptimize(brute_solve(inst, t));
}
BENCHMARK(BM_BrutePetersen);

static void BM_PreservesRelation(benchmark::State& state) {
    const auto rel = dist13().at("R");
    const Offset d = state.range(0);
    for (auto _ : state)
        benchmark::DoNotOptimize(preserves_relation(d, rel).preserved);
}
BENCHMARK(BM_PreservesRelation)->Arg(2)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_ModularMedian(benchmark::State& state) {
    Offset x = 17, y = -4, z = 9;
    for (auto _ : state) {
        benchmark::DoNotOptimize(modular_median(3, x, y, z));
        ++x;
    }
}
BENCHMARK(BM_ModularMedian);
BENCHMARK_MAIN();
