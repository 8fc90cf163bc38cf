// SPDX-License-Identifier: Apache-2.0
#include "thzrelay/specfun.hpp"

#include <benchmark/benchmark.h>

using namespace thz::specfun;

static void BM_LogGamma(benchmark::State& state)
{
    cplx z{2.5, -3.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(log_gamma(z));
        z += cplx{1e-9, 0.0};
    }
}
BENCHMARK(BM_LogGamma);

static void BM_UpperIncompleteGamma(benchmark::State& state)
{
    const double s = static_cast<double>(state.range(0)) / 10.0;
    for (auto _ : state)
        benchmark::DoNotOptimize(upper_incomplete_gamma(s, 0.8));
}
BENCHMARK(BM_UpperIncompleteGamma)->Arg(-25)->Arg(-5)->Arg(5)->Arg(25);

static void BM_MeijerG(benchmark::State& state)
{
    const double c = 3.6333 / 2.0;
    const FoxHParams p{2, 1, {{1.0 - c}, {1.0}}, {{0.0}, {1.0 - c}, {-c}}};
    for (auto _ : state)
        benchmark::DoNotOptimize(meijer_g(p, 0.5));
}
BENCHMARK(BM_MeijerG)->Unit(benchmark::kMicrosecond);

static void BM_BivariateFoxH(benchmark::State& state)
{
    BivFoxHParams h;
    h.n1 = 1;
    h.joint_upper = {{0.4, 1.0, 1.0}};
    h.inner_x = {1, 0, {}, {{0.0, 1.0}}};
    h.inner_y = {1, 0, {}, {{0.0, 1.0}}};
    for (auto _ : state)
        benchmark::DoNotOptimize(bivariate_fox_h(h, 2.0, 1.0));
}
BENCHMARK(BM_BivariateFoxH)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
