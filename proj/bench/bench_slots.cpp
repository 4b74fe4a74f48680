// SPDX-License-Identifier: Apache-2.0
//
// Serial reference kernels against the OpenMP slot loop. Both policies must
// produce identical tables; only wall time differs.

#include "swipt/experiments.hpp"

#include <benchmark/benchmark.h>
#include <omp.h>

#include <vector>

namespace {

using namespace swipt;

constexpr std::uint64_t kSeed = 7;

ParallelPolicy policy_of(const benchmark::State& state)
{
    return state.range(0) ? ParallelPolicy::openmp : ParallelPolicy::serial;
}

void label(benchmark::State& state)
{
    state.SetLabel(state.range(0) ? "openmp x" + std::to_string(omp_get_max_threads()) : "serial");
}

void BM_BuildSlots(benchmark::State& state)
{
    NetworkConfig cfg;
    const auto slots = static_cast<std::uint64_t>(state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(build_slots(cfg, kSeed, slots, IaOptions{}, policy_of(state)));
    state.SetItemsProcessed(state.iterations() * static_cast<long long>(slots));
    label(state);
}

const std::vector<SlotData>& cached_slots()
{
    static const std::vector<SlotData> slots = build_slots(NetworkConfig{}, kSeed, 64, IaOptions{}, ParallelPolicy::openmp);
    return slots;
}

void BM_PaProfile(benchmark::State& state)
{
    ExperimentSpec spec;
    spec.slots = 64;
    spec.seed = kSeed;
    spec.pa.restarts = 4;
    spec.policy = policy_of(state);
    const auto& slots = cached_slots();
    for (auto _ : state)
        benchmark::DoNotOptimize(run_pa_profile(spec, slots));
    state.SetItemsProcessed(state.iterations() * 64);
    label(state);
}

void BM_SelectionSweep(benchmark::State& state)
{
    ExperimentSpec spec;
    spec.slots = 64;
    spec.seed = kSeed;
    spec.policy = policy_of(state);
    const auto& slots = cached_slots();
    for (auto _ : state)
        benchmark::DoNotOptimize(run_selection_sweep(spec, slots));
    label(state);
}

}  // namespace

BENCHMARK(BM_BuildSlots)->ArgsProduct({{0, 1}, {64}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_PaProfile)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SelectionSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
