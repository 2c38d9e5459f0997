#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "sudoku_potts/experiment.hpp"
#include "sudoku_potts/hamiltonian.hpp"
#include "sudoku_potts/observables.hpp"
#include "sudoku_potts/peer_table.hpp"
#include "sudoku_potts/sampler.hpp"
#include "sudoku_potts/solver.hpp"
#include "sudoku_potts/variants.hpp"
#include "support/oracles.hpp"
#include "support/stats.hpp"

using namespace sudoku_potts;
using namespace test_support;

namespace {

// the 64-state shidoku instance: three free cells of a solved 4x4 grid
PuzzleSpec small_shidoku() { return blank_cells(kSolved4x4Text, {0, 5, 10}, "shidoku3"); }

int state_code(const Grid& grid, const PuzzleSpec& spec) {
    int code = 0, scale = 1;
    for (const auto cell : spec.free_cells) {
        code += (grid[cell] - 1) * scale;
        scale *= spec.geometry.n_states;
    }
    return code;
}

} // namespace

TEST_CASE("metropolis_step follows the documented draw order and acceptance law") {
    const PuzzleSpec spec = blank_cells(kSolved9x9Text, {0, 7, 13, 29, 44, 61, 80});
    const PeerTable peers = build_peer_table(spec.geometry);
    const Grid start = random_fill(spec, 99);

    const std::uint64_t seed = 4242;
    SamplerState state(spec, peers, start, 0.8, seed);
    Rng shadow(seed);

    Grid expected_grid = start;
    for (int step = 0; step < 20'000; ++step) {
        const auto cell =
            spec.free_cells[shadow.next_below(static_cast<std::uint32_t>(spec.free_cells.size()))];
        const std::uint8_t old_value = expected_grid[cell];
        std::uint8_t proposal = static_cast<std::uint8_t>(1 + shadow.next_below(8));
        if (proposal >= old_value) ++proposal;
        const int delta = delta_energy(expected_grid, peers, cell, proposal);
        bool expect_accept;
        if (delta <= 0)
            expect_accept = true;  // no uniform drawn for downhill/flat moves
        else
            expect_accept = shadow.next_double() < std::exp(-delta / 0.8);

        const StepResult result = state.metropolis_step();
        CHECK(result.cell == cell);
        CHECK(result.old_value == old_value);
        CHECK(result.new_value == proposal);
        CHECK(result.delta == delta);
        CHECK(result.accepted == expect_accept);
        if (expect_accept) expected_grid[cell] = proposal;
        CHECK(state.grid() == expected_grid);
    }
    state.validate();
}

TEST_CASE("downhill and flat moves are always accepted; T=0 never climbs") {
    const PuzzleSpec spec = blank_cells(kSolved9x9Text, {1, 2, 3, 10, 20, 30, 40});
    const PeerTable peers = build_peer_table(spec.geometry);

    for (const double t : {0.0, 0.3, 2.0}) {
        SamplerState state(spec, peers, random_fill(spec, 5), t, 17);
        int energy_now = state.energy();
        for (int step = 0; step < 50'000; ++step) {
            const StepResult result = state.metropolis_step();
            if (result.delta <= 0) CHECK(result.accepted);
            if (t == 0.0) CHECK(state.energy() <= energy_now);
            energy_now = state.energy();
        }
        state.validate();
    }
}

TEST_CASE("acceptance rate approaches one in the infinite-temperature limit") {
    const PuzzleSpec spec = blank_cells(kSolved9x9Text, {0, 1, 2, 9, 10, 11, 18, 19, 20});
    const PeerTable peers = build_peer_table(spec.geometry);
    SamplerState state(spec, peers, random_fill(spec, 1), 1e9, 3);
    for (int step = 0; step < 100'000; ++step) state.metropolis_step();
    const double rate =
        static_cast<double>(state.accepted()) / static_cast<double>(state.step_count());
    CHECK(rate > 0.999);
}

TEST_CASE("acceptance rate grows with temperature on average") {
    const PuzzleSpec spec = blank_cells(kSolved9x9Text,
                                        {0, 4, 8, 12, 16, 20, 24, 28, 32, 36, 40, 44});
    const PeerTable peers = build_peer_table(spec.geometry);
    RunOptions options;
    options.n_steps = 400'000;
    options.burn_in = 50'000;

    double previous = -1.0;
    for (const double t : {0.2, 0.5, 1.0, 2.0, 5.0}) {
        const Trajectory traj = run_trajectory(spec, peers, t, options, 31);
        const double rate =
            static_cast<double>(traj.accepted) / static_cast<double>(traj.n_steps);
        CHECK(rate >= previous - 0.005);
        previous = rate;
    }
}

TEST_CASE("empirical state distribution matches the exact Boltzmann weights") {
    const PuzzleSpec spec = small_shidoku();
    const PeerTable peers = build_peer_table(spec.geometry);

    // exact weights from the raw 64-state enumeration (independent oracle)
    const auto states = enumerate_completions(spec);
    REQUIRE(states.size() == 64);

    for (const double t : {0.5, 1.0, 2.0}) {
        std::vector<double> weights(64);
        double z = 0.0;
        for (std::size_t i = 0; i < 64; ++i) {
            weights[i] = std::exp(-states[i].energy / t);
            z += weights[i];
        }
        for (auto& w : weights) w /= z;

        SamplerState state(spec, peers, random_fill(spec, 8), t, 1000 + static_cast<int>(t * 10));
        std::vector<std::uint64_t> visits(64, 0);
        const int stride = 16;  // decorrelates consecutive samples
        for (int burn = 0; burn < 10'000; ++burn) state.metropolis_step();
        for (int sample = 0; sample < 150'000; ++sample) {
            for (int k = 0; k < stride; ++k) state.metropolis_step();
            ++visits[state_code(state.grid(), spec)];
        }
        const auto result = chi_squared_test(visits, weights);
        INFO("T = ", t, ", chi2 = ", result.statistic, ", p = ", result.p_value);
        CHECK(result.p_value > 0.001);
    }
}

TEST_CASE("Boltzmann check on the 4096-state instance") {
    const PuzzleSpec spec = blank_cells(kSolved4x4Text, {0, 1, 5, 6, 10, 12}, "shidoku6");
    const PeerTable peers = build_peer_table(spec.geometry);

    const auto states = enumerate_completions(spec);
    REQUIRE(states.size() == 4096);
    std::vector<double> weights(states.size());
    double z = 0.0;
    for (std::size_t i = 0; i < states.size(); ++i) {
        weights[i] = std::exp(-static_cast<double>(states[i].energy));
        z += weights[i];
    }
    for (auto& w : weights) w /= z;

    SamplerState state(spec, peers, random_fill(spec, 2), 1.0, 90210);
    std::vector<std::uint64_t> visits(states.size(), 0);
    for (int burn = 0; burn < 20'000; ++burn) state.metropolis_step();
    for (int sample = 0; sample < 400'000; ++sample) {
        for (int k = 0; k < 8; ++k) state.metropolis_step();
        int code = 0, scale = 1;
        for (const auto cell : spec.free_cells) {
            code += (state.grid()[cell] - 1) * scale;
            scale *= 4;
        }
        ++visits[code];
    }
    const auto result = chi_squared_test(visits, weights);
    INFO("chi2 = ", result.statistic, ", dof = ", result.dof, ", p = ", result.p_value);
    CHECK(result.p_value > 0.001);
}

TEST_CASE("run_trajectory rejects fully clued puzzles and bad windows") {
    const PuzzleSpec full = parse_puzzle(kSolved9x9Text);
    const PeerTable peers = build_peer_table(full.geometry);
    RunOptions options;
    options.n_steps = 100;
    CHECK_THROWS_AS(run_trajectory(full, peers, 1.0, options, 1), std::invalid_argument);

    const PuzzleSpec spec = blank_cells(kSolved9x9Text, {0, 1, 2});
    options.burn_in = 100;  // n_steps must exceed burn_in
    CHECK_THROWS_AS(run_trajectory(spec, peers, 1.0, options, 1), std::invalid_argument);
    options.burn_in = 0;
    options.stride = 0;
    CHECK_THROWS_AS(run_trajectory(spec, peers, 1.0, options, 1), std::invalid_argument);
    options.stride = 2;
    options.record_site_histogram = true;  // requires stride 1
    CHECK_THROWS_AS(run_trajectory(spec, peers, 1.0, options, 1), std::invalid_argument);
}

TEST_CASE("same seed gives bitwise-identical trajectories") {
    const PuzzleSpec spec = blank_cells(kSolved9x9Text, {3, 5, 8, 21, 34, 55, 71});
    const PeerTable peers = build_peer_table(spec.geometry);
    const Grid reference = grid_from_text(kSolved9x9Text);

    RunOptions options;
    options.n_steps = 120'000;
    options.burn_in = 20'000;
    options.record_site_histogram = true;
    options.keep_series = true;
    options.validate_every = 10'000;

    const Trajectory a = run_trajectory(spec, peers, 0.7, options, 555, &reference);
    const Trajectory b = run_trajectory(spec, peers, 0.7, options, 555, &reference);
    const Trajectory c = run_trajectory(spec, peers, 0.7, options, 556, &reference);
    CHECK(a == b);
    CHECK(a != c);
    CHECK(a.n_samples == 100'000);
    CHECK(std::accumulate(a.batch_sizes.begin(), a.batch_sizes.end(), std::uint64_t{0}) ==
          a.n_samples);
}

TEST_CASE("a low-T quench that reaches the ground state stays there") {
    // At T = 0.05 most random starts freeze into local minima (the glass);
    // this seed is one whose descent funnels into the solution basin,
    // where the chain then sits for the whole measured window.
    const Grid solution = grid_from_text(kSolved9x9Text);
    const PuzzleSpec spec = trim_to_unique(solution, make_geometry(3), 36, 8);
    const PeerTable peers = build_peer_table(spec.geometry);

    RunOptions options;
    options.n_steps = 400'000;
    options.burn_in = 200'000;
    const Trajectory traj = run_trajectory(spec, peers, 0.05, options, 14, &solution);
    CHECK(mean_energy(traj).mean < 0.05);
    CHECK(ground_state_fraction(traj) > 0.9);

    // started on the solution, the chain never leaves at this temperature
    options.initial_grid = &solution;
    options.burn_in = 0;
    options.n_steps = 200'000;
    const Trajectory pinned = run_trajectory(spec, peers, 0.05, options, 3, &solution);
    CHECK(mean_energy(pinned).mean == 0.0);
    CHECK(ground_state_fraction(pinned) == 1.0);
}

TEST_CASE("the condensed window finds the unique ground state from random starts") {
    // between the glass (quench freezes) and the paramagnet (solution
    // entropically invisible) sits the window where sampling solves puzzles
    const Grid solution = grid_from_text(kSolved9x9Text);
    const PuzzleSpec spec = trim_to_unique(solution, make_geometry(3), 36, 8);
    const PeerTable peers = build_peer_table(spec.geometry);

    RunOptions options;
    options.n_steps = 400'000;
    options.burn_in = 200'000;
    int found = 0;
    for (std::uint64_t seed = 10; seed < 20; ++seed) {
        const Trajectory traj = run_trajectory(spec, peers, 0.25, options, seed, &solution);
        found += (ground_state_fraction(traj) > 0.5);
    }
    CHECK(found >= 5);
}

TEST_CASE("site histograms match a naive per-step accumulation") {
    const PuzzleSpec spec = small_shidoku();
    const PeerTable peers = build_peer_table(spec.geometry);
    const Grid reference = grid_from_text(kSolved4x4Text);

    RunOptions options;
    options.n_steps = 30'000;
    options.burn_in = 5'000;
    options.record_site_histogram = true;
    options.keep_series = true;
    const std::uint64_t seed = 777;
    const Trajectory traj = run_trajectory(spec, peers, 1.0, options, seed, &reference);

    // replay the identical chain, accumulating the slow way
    Grid start = random_fill(spec, derive_stream_seed(seed, 0));
    SamplerState state(spec, peers, std::move(start), 1.0, derive_stream_seed(seed, 1));
    std::vector<std::uint64_t> counts(16 * 4, 0);
    std::uint64_t gs_hits = 0, zero_hits = 0;
    std::vector<std::int32_t> series;
    for (std::uint64_t step = 1; step <= options.n_steps; ++step) {
        state.metropolis_step();
        if (step <= options.burn_in) continue;
        for (int cell = 0; cell < 16; ++cell) ++counts[cell * 4 + state.grid()[cell] - 1];
        series.push_back(state.energy());
        zero_hits += (state.energy() == 0);
        gs_hits += (state.grid() == reference);
    }
    CHECK(traj.site_counts == counts);
    CHECK(traj.series == series);
    CHECK(traj.ground_state_hits == gs_hits);
    CHECK(traj.zero_energy_hits == zero_hits);
}

TEST_CASE("anneal_replicas: reduction to run_trajectory and schedule invariance") {
    const PuzzleSpec spec = blank_cells(kSolved9x9Text, {2, 4, 6, 18, 36, 54, 72});
    const PeerTable peers = build_peer_table(spec.geometry);
    const Grid reference = grid_from_text(kSolved9x9Text);

    // one replica is definitionally a run_trajectory with the derived seed
    const auto single = anneal_replicas(spec, peers, 0.6, 1, 50'000, 40'000, 910, &reference);
    RunOptions options;
    options.n_steps = 50'000;
    options.burn_in = 10'000;
    options.record_site_histogram = true;
    const Trajectory direct = run_trajectory(spec, peers, 0.6, options,
                                             derive_stream_seed(910, 0), &reference);
    REQUIRE(single.size() == 1);
    CHECK(single[0] == direct);

    // thread scheduling cannot change any replica
    const auto serial = anneal_replicas(spec, peers, 0.6, 6, 20'000, 10'000, 33, &reference,
                                        true, false, 1);
    const auto threaded = anneal_replicas(spec, peers, 0.6, 6, 20'000, 10'000, 33, &reference,
                                          true, false, 4);
    CHECK(serial == threaded);

    CHECK_THROWS_AS(anneal_replicas(spec, peers, 0.6, 0, 100, 50, 1), std::invalid_argument);
    CHECK_THROWS_AS(anneal_replicas(spec, peers, 0.6, 2, 100, 200, 1), std::invalid_argument);
}

TEST_CASE("clue cells never change over a run") {
    const PuzzleSpec spec = blank_cells(kSolved9x9Text, {11, 13, 15, 31, 33, 35});
    const PeerTable peers = build_peer_table(spec.geometry);
    RunOptions options;
    options.n_steps = 200'000;
    options.burn_in = 0;
    options.validate_every = 25'000;  // validate() also asserts clue integrity
    const Trajectory traj = run_trajectory(spec, peers, 3.0, options, 71);
    CHECK(spec.agrees_with_clues(traj.final_grid));
}
