#include <benchmark/benchmark.h>

#include "banditsim/complexity.hpp"
#include "banditsim/experiments.hpp"
#include "banditsim/simulation.hpp"

namespace {

using namespace banditsim;

const BanditInstance& three_group_instance() {
    static const BanditInstance instance =
        BanditInstance::bernoulli({0.5, 0.42, 0.4, 0.4, 0.35, 0.35});
    return instance;
}

void bench_sar_run(benchmark::State& state) {
    const auto& instance = three_group_instance();
    const long long n = state.range(0);
    std::uint64_t trial = 0;
    for (auto _ : state) {
        RngStream rng(42, trial++);
        benchmark::DoNotOptimize(run_sar_m_best(instance, 2, n, rng));
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(bench_sar_run)->Arg(1000)->Arg(8009);

void bench_gap_e_run(benchmark::State& state) {
    const auto& instance = three_group_instance();
    const long long n = state.range(0);
    const double h1 = complexity_m_best(instance.true_means(), 2).h1;
    std::uint64_t trial = 0;
    for (auto _ : state) {
        RngStream rng(42, trial++);
        benchmark::DoNotOptimize(run_gap_e(instance, 2, n, 2.0, h1, rng));
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(bench_gap_e_run)->Arg(1000)->Arg(8009);

void bench_uniform_run(benchmark::State& state) {
    const auto& instance = three_group_instance();
    const long long n = state.range(0);
    std::uint64_t trial = 0;
    for (auto _ : state) {
        RngStream rng(42, trial++);
        benchmark::DoNotOptimize(run_uniform(instance, 2, n, rng));
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(bench_uniform_run)->Arg(8009);

void bench_complexity_wide(benchmark::State& state) {
    const auto means = builtin_experiments()[5].means;  // K = 30
    for (auto _ : state) {
        for (int m = 2; m <= 29; ++m) {
            benchmark::DoNotOptimize(complexity_m_best(means, m));
        }
    }
}
BENCHMARK(bench_complexity_wide);

void bench_estimate_error(benchmark::State& state) {
    const auto instance = BanditInstance::bernoulli({0.9, 0.5, 0.1});
    for (auto _ : state) {
        benchmark::DoNotOptimize(estimate_error(instance, StrategySpec::sar(), 1, 200,
                                                1000, 42, 1));
    }
    state.SetItemsProcessed(state.iterations() * 1000 * 200);
}
BENCHMARK(bench_estimate_error);

}  // namespace

BENCHMARK_MAIN();
