// Serial reference kernels against their OpenMP counterparts.
// Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include "cmag/inout.hpp"
#include "cmag/spectrum.hpp"

namespace {

cmag::system_params figure_params()
{
    cmag::system_params p;
    p.theta = cmag::pi;
    return p;
}

void bm_sweep_reference(benchmark::State& state)
{
    const auto p = figure_params();
    const cmag::sweep_spec s{cmag::sweep_parameter::omega_m, 3.4, 6.6,
                             static_cast<int>(state.range(0))};
    for (auto _ : state) {
        benchmark::DoNotOptimize(cmag::reference::sweep_spectrum(p, s));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void bm_sweep_parallel(benchmark::State& state)
{
    const auto p = figure_params();
    const cmag::sweep_spec s{cmag::sweep_parameter::omega_m, 3.4, 6.6,
                             static_cast<int>(state.range(0))};
    for (auto _ : state) {
        benchmark::DoNotOptimize(cmag::sweep_spectrum(p, s));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

cmag::probe_grid square_grid(int n)
{
    const cmag::sweep_spec s{cmag::sweep_parameter::omega_m, 3.4, 6.6, n};
    return cmag::probe_grid::uniform(3.4, 6.6, n, s);
}

void bm_map_reference(benchmark::State& state)
{
    const auto p = figure_params();
    const auto grid = square_grid(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(cmag::reference::transmission_map(p, grid));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

void bm_map_parallel(benchmark::State& state)
{
    const auto p = figure_params();
    const auto grid = square_grid(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(cmag::transmission_map(p, grid));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

} // namespace

BENCHMARK(bm_sweep_reference)->Arg(601)->Arg(4001)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_sweep_parallel)->Arg(601)->Arg(4001)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_map_reference)->Arg(201)->Arg(601)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_map_parallel)->Arg(201)->Arg(601)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
