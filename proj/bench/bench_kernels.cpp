#include "dvertex/omega.hpp"
#include "dvertex/weights.hpp"

#include <benchmark/benchmark.h>

using namespace dvertex;

namespace {

ExecPolicy policy_for(const benchmark::State& state)
{
    return state.range(0) == 0 ? ExecPolicy::serial() : ExecPolicy::threads(0);
}

void BM_WeightTable(benchmark::State& state)
{
    const auto policy = policy_for(state);
    for (auto _ : state) benchmark::DoNotOptimize(build_weight_table(8, 4, TautShift::symbolic(8), policy));
}

void BM_KeyConjecture(benchmark::State& state)
{
    const auto policy = policy_for(state);
    for (auto _ : state) benchmark::DoNotOptimize(key_conjecture_sweep(8, 4, policy));
}

void BM_OmegaC(benchmark::State& state)
{
    const auto policy = policy_for(state);
    for (auto _ : state) benchmark::DoNotOptimize(omega_rows(8, 5, false, policy));
}

void BM_ExpIdentity(benchmark::State& state)
{
    const auto policy = policy_for(state);
    for (auto _ : state) benchmark::DoNotOptimize(check_exp_identity(3, 6, 6, policy));
}

}  // namespace

// Argument 0 runs the serial reference, 1 the OpenMP kernel.
BENCHMARK(BM_WeightTable)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KeyConjecture)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OmegaC)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExpIdentity)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
