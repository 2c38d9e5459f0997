// Microbenchmarks for the sampling kernel and its supporting pieces. The
// Metropolis step rate is the number that decides every experiment's wall
// time, so regressions here matter more than anywhere else.

#include <benchmark/benchmark.h>

#include "sudoku_potts/exact.hpp"
#include "sudoku_potts/experiment.hpp"
#include "sudoku_potts/hamiltonian.hpp"
#include "sudoku_potts/peer_table.hpp"
#include "sudoku_potts/sampler.hpp"
#include "sudoku_potts/solver.hpp"
#include "sudoku_potts/variants.hpp"

namespace {

using namespace sudoku_potts;

PuzzleSpec benchmark_puzzle(int clues) {
    const Geometry geo = make_geometry(3);
    const Grid solution = random_solution(geo, 1);
    return make_variant(empty_spec(geo), solution, clues, 2);
}

void BM_MetropolisStep(benchmark::State& state) {
    const PuzzleSpec spec = benchmark_puzzle(28);
    const PeerTable peers = build_peer_table(spec.geometry);
    const double temperature = static_cast<double>(state.range(0)) / 100.0;
    SamplerState sampler(spec, peers, random_fill(spec, 3), temperature, 42);
    for (auto _ : state) benchmark::DoNotOptimize(sampler.metropolis_step().accepted);
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_MetropolisStep)->Arg(10)->Arg(35)->Arg(100)->Arg(1000);

void BM_RunTrajectory100k(benchmark::State& state) {
    const PuzzleSpec spec = benchmark_puzzle(28);
    const PeerTable peers = build_peer_table(spec.geometry);
    RunOptions options;
    options.n_steps = 100'000;
    options.burn_in = 20'000;
    std::uint64_t seed = 0;
    for (auto _ : state) {
        const Trajectory traj = run_trajectory(spec, peers, 0.35, options, ++seed);
        benchmark::DoNotOptimize(traj.energy_sum);
    }
    state.SetItemsProcessed(state.iterations() * options.n_steps);
}
BENCHMARK(BM_RunTrajectory100k);

void BM_DeltaEnergy(benchmark::State& state) {
    const PuzzleSpec spec = benchmark_puzzle(28);
    const PeerTable peers = build_peer_table(spec.geometry);
    const Grid grid = random_fill(spec, 5);
    int cell = 0, value = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(delta_energy(grid, peers, cell, value));
        cell = (cell + 17) % 81;
        value = value % 9 + 1;
    }
}
BENCHMARK(BM_DeltaEnergy);

void BM_FullEnergy(benchmark::State& state) {
    const PuzzleSpec spec = benchmark_puzzle(28);
    const PeerTable peers = build_peer_table(spec.geometry);
    const Grid grid = random_fill(spec, 5);
    for (auto _ : state) benchmark::DoNotOptimize(energy(grid, peers));
}
BENCHMARK(BM_FullEnergy);

void BM_CountSolutionsCap2(benchmark::State& state) {
    const PuzzleSpec spec = benchmark_puzzle(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(count_solutions(spec, 2));
}
BENCHMARK(BM_CountSolutionsCap2)->Arg(24)->Arg(30)->Arg(45);

void BM_ExactReference6Free(benchmark::State& state) {
    const Geometry geo = make_geometry(3);
    const Grid solution = random_solution(geo, 1);
    const PuzzleSpec spec = make_variant(empty_spec(geo), solution, 75, 2);
    const std::vector<double> temps{0.5, 1.0, 2.0};
    for (auto _ : state) {
        const ExactTable table = exact_reference(spec, temps);
        benchmark::DoNotOptimize(table.points.front().mean_energy);
    }
}
BENCHMARK(BM_ExactReference6Free);

} // namespace

BENCHMARK_MAIN();
