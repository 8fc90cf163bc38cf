// SPDX-License-Identifier: Apache-2.0
#include "thzrelay/mc_oracle.hpp"
#include "thzrelay/metrics.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

namespace {

thz::DualHopConfig mixed()
{
    return {{1.2, 3.0, 1.0}, {1.3, 2.0, 3.6333}, 10.0, 10.0, 1.7};
}

} // namespace

static void BM_E2eCdfClosedForm(benchmark::State& state)
{
    const auto cfg = mixed();
    for (auto _ : state)
        benchmark::DoNotOptimize(thz::e2e_cdf(cfg, std::pow(10.0, 0.2)));
}
BENCHMARK(BM_E2eCdfClosedForm)->Unit(benchmark::kMillisecond);

static void BM_E2eCdfQuadrature(benchmark::State& state)
{
    const auto cfg = mixed();
    for (auto _ : state)
        benchmark::DoNotOptimize(thz::e2e_cdf_quadrature(cfg, std::pow(10.0, 0.2)));
}
BENCHMARK(BM_E2eCdfQuadrature)->Unit(benchmark::kMillisecond);

static void BM_AvgBerClosedForm(benchmark::State& state)
{
    const auto cfg = mixed();
    for (auto _ : state)
        benchmark::DoNotOptimize(thz::avg_ber_exact(cfg, thz::Modulation::bpsk()));
}
BENCHMARK(BM_AvgBerClosedForm)->Unit(benchmark::kMillisecond);

static void BM_MonteCarloOutage(benchmark::State& state)
{
    const auto cfg = mixed();
    const thz::mc::RunOptions run{1, static_cast<std::uint64_t>(state.range(0)), 1};
    for (auto _ : state)
        benchmark::DoNotOptimize(thz::mc::estimate_outage(cfg, std::pow(10.0, 0.2), run));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MonteCarloOutage)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
