#include <benchmark/benchmark.h>

#include "darkport/estimation.hpp"
#include "darkport/fisher.hpp"

using namespace darkport;

namespace {

void fisher_grid(benchmark::State& state, Execution exec) {
    const SqueezedVacuumSpec spec(1.0);
    const LossChannel channel(0.002);
    const auto grid = linear_grid(0.02, 4.0, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto curve = fisher_curve(grid, spec, channel, kModeAll, exec);
        benchmark::DoNotOptimize(curve.cfi_exact.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void monte_carlo(benchmark::State& state, Execution exec) {
    ExperimentConfig cfg;
    cfg.x_true = 1.5;
    cfg.n_samples = 2000;
    cfg.n_trials = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        auto rep = run_experiment(cfg, exec);
        benchmark::DoNotOptimize(rep.sensitivity);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void large_displacement(benchmark::State& state) {
    const SqueezedVacuumSpec spec(1.5);
    const double x = static_cast<double>(state.range(0));
    for (auto _ : state) {
        auto d = distribution(x, spec);
        benchmark::DoNotOptimize(d.probs.data());
    }
}

}  // namespace

BENCHMARK_CAPTURE(fisher_grid, serial, Execution::kSerial)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(fisher_grid, parallel, Execution::kParallel)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(monte_carlo, serial, Execution::kSerial)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(monte_carlo, parallel, Execution::kParallel)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK(large_displacement)->Arg(10)->Arg(100)->Arg(300)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
