#include <benchmark/benchmark.h>

#include "isomono/divisor_flow.hpp"
#include "isomono/factor_flow.hpp"
#include "isomono/formal.hpp"
#include "isomono/generate.hpp"

using namespace isomono;

namespace {

void BM_SwapAdjacent(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    Rng rng(42);
    const FactorState fs = random_factor_state(rng, m, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(swap_adjacent(fs.C[0], fs.C[1]));
    }
}
BENCHMARK(BM_SwapAdjacent)->Arg(2)->Arg(3)->Arg(6);

void BM_Eigenvalues(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    Rng rng(43);
    const auto [A, groups] = random_polynomial(rng, m, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(eigenvalues(A));
    }
}
BENCHMARK(BM_Eigenvalues)->Arg(2)->Arg(3)->Arg(5);

void BM_FormalSeries(benchmark::State& state) {
    const int K = static_cast<int>(state.range(0));
    Rng rng(44);
    const auto [A, groups] = random_polynomial(rng, 3, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(formal_series(A, K));
    }
}
BENCHMARK(BM_FormalSeries)->Arg(1)->Arg(3)->Arg(8);

void BM_DivisorCube(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Rng rng(45);
    const DivisorState s = random_divisor_state(rng, 2, n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(divisor_cube(s));
    }
}
BENCHMARK(BM_DivisorCube)->Arg(2)->Arg(3)->Arg(4);

void BM_FactorFlowStep(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Rng rng(46);
    const FactorState fs = random_factor_state(rng, 2, n);
    const FactorSequence seq(fs.A0, fs.C, fs.variant);
    for (auto _ : state) {
        benchmark::DoNotOptimize(flow_F(seq, 1));
    }
}
BENCHMARK(BM_FactorFlowStep)->Arg(2)->Arg(3)->Arg(4);

void BM_SchlesingerUnitShift(benchmark::State& state) {
    Rng rng(47);
    const auto [A, groups] = random_polynomial(rng, 2, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            schlesinger_action(A, groups.flattened(), {-1, -1, 0, 0}, {1, 1}));
    }
}
BENCHMARK(BM_SchlesingerUnitShift);

}  // namespace

BENCHMARK_MAIN();
