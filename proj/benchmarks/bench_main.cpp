#include <benchmark/benchmark.h>

#include "vleb/cauchy.hpp"
#include "vleb/maximal.hpp"
#include "vleb/norms.hpp"

using namespace vleb;

namespace {

GridPtr bench_grid(int n) { return make_grid_ptr(16.0, n, {0.0}, 8); }

void BM_LuxemburgNorm(benchmark::State& state) {
    auto g = bench_grid(static_cast<int>(state.range(0)) + 1);
    VariableExponent p = piecewise_exponent({0.0}, {2.0, 3.0});
    GridFunction f = sample(sum(char_fun(-2.0, 1.0), bump(0.5, 1.0)), g);
    for (auto _ : state) {
        benchmark::DoNotOptimize(luxemburg_norm(f, p).value);
    }
}
BENCHMARK(BM_LuxemburgNorm)->Arg(1024)->Arg(4096);

void BM_WeightedNorm(benchmark::State& state) {
    auto g = bench_grid(static_cast<int>(state.range(0)) + 1);
    VariableExponent p = const_exponent(2.0);
    WeightSpec w = power_weight({0.0}, {0.3});
    GridFunction f = sample(char_fun(-1.0, 1.0), g);
    for (auto _ : state) {
        benchmark::DoNotOptimize(weighted_norm(f, p, w).value);
    }
}
BENCHMARK(BM_WeightedNorm)->Arg(1024)->Arg(4096);

void BM_CauchyTransform(benchmark::State& state) {
    auto g = bench_grid(static_cast<int>(state.range(0)) + 1);
    GridFunction f = sample(bump(0.0, 1.0), g);
    for (auto _ : state) {
        benchmark::DoNotOptimize(cauchy_transform(f).values.size());
    }
}
BENCHMARK(BM_CauchyTransform)->Arg(512)->Arg(1024);

void BM_CauchyComposed(benchmark::State& state) {
    auto g = bench_grid(static_cast<int>(state.range(0)) + 1);
    GridFunction sf = cauchy_transform(sample(bump(0.0, 1.0), g));
    for (auto _ : state) {
        benchmark::DoNotOptimize(cauchy_transform(sf).values.size());
    }
}
BENCHMARK(BM_CauchyComposed)->Arg(512)->Arg(1024);

void BM_MaximalFunction(benchmark::State& state) {
    auto g = bench_grid(static_cast<int>(state.range(0)) + 1);
    GridFunction f = sample(sum(char_fun(-2.0, 1.0), bump(2.0, 0.5)), g);
    for (auto _ : state) {
        benchmark::DoNotOptimize(maximal_function(f).values.size());
    }
}
BENCHMARK(BM_MaximalFunction)->Arg(1024)->Arg(4096);

void BM_SharpPair(benchmark::State& state) {
    auto g = bench_grid(static_cast<int>(state.range(0)) + 1);
    GridFunction f = sample(char_fun(0.0, 2.0), g);
    for (auto _ : state) {
        GridFunction sharp, local;
        sharp_pair(f, 0.5, 0.25, sharp, local);
        benchmark::DoNotOptimize(sharp.values.size());
    }
}
BENCHMARK(BM_SharpPair)->Arg(256)->Arg(512);

}  // namespace

BENCHMARK_MAIN();
