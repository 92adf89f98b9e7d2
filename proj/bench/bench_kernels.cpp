// Serial reference vs OpenMP kernels. Run with --benchmark_counters_tabular=true.

#include <benchmark/benchmark.h>

#include "helix/geometry.hpp"
#include "helix/otto.hpp"
#include "helix/spectrum.hpp"

using namespace helix;

namespace {

const otto::CycleTemplate &curved_cycle() {
    static const otto::CycleTemplate cycle{otto::LevelModel::curved(0.5, 1.0, 4), otto::BathParams{}};
    return cycle;
}

std::vector<spectrum::RadialProblem> problem_grid() {
    std::vector<spectrum::RadialProblem> problems;
    for (int i = 1; i <= 8; ++i) {
        for (int l = 0; l <= 3; ++l) {
            problems.push_back(spectrum::RadialProblem::make(0.25 * i, l));
        }
    }
    return problems;
}

void BM_SweepSerial(benchmark::State &state) {
    const auto grid = otto::make_grid(0.2, 8.0, 8.0 / static_cast<double>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(reference::sweep(curved_cycle(), grid));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(grid.size()));
}

void BM_SweepParallel(benchmark::State &state) {
    const auto grid = otto::make_grid(0.2, 8.0, 8.0 / static_cast<double>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(otto::sweep(curved_cycle(), grid));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(grid.size()));
}

void BM_SpectrumGridSerial(benchmark::State &state) {
    const auto problems = problem_grid();
    for (auto _ : state) {
        benchmark::DoNotOptimize(reference::solve_grid(problems, 3));
    }
}

void BM_SpectrumGridParallel(benchmark::State &state) {
    const auto problems = problem_grid();
    for (auto _ : state) {
        benchmark::DoNotOptimize(spectrum::solve_grid(problems, 3));
    }
}

void BM_FiniteDifferenceSerial(benchmark::State &state) {
    const auto potential = [](double xi) { return geometry::effective_potential(0, xi); };
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            reference::finite_difference_eigenvalues(1.0, potential, static_cast<int>(state.range(0)), 8));
    }
}

void BM_FiniteDifferenceParallel(benchmark::State &state) {
    const auto potential = [](double xi) { return geometry::effective_potential(0, xi); };
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            spectrum::finite_difference_eigenvalues(1.0, potential, static_cast<int>(state.range(0)), 8));
    }
}

} // namespace

BENCHMARK(BM_SweepSerial)->Arg(1000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(1000)->Arg(100000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SpectrumGridSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SpectrumGridParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_FiniteDifferenceSerial)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FiniteDifferenceParallel)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
