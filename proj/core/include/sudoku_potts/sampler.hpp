#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "sudoku_potts/grid.hpp"
#include "sudoku_potts/hamiltonian.hpp"
#include "sudoku_potts/peer_table.hpp"
#include "sudoku_potts/puzzle.hpp"
#include "sudoku_potts/rng.hpp"
#include "sudoku_potts/trajectory.hpp"

namespace sudoku_potts {

struct StepResult {
    bool accepted;
    std::uint16_t cell;
    std::uint8_t old_value;
    std::uint8_t new_value;
    std::int16_t delta;
};

// Metropolis sampler at a fixed fictitious temperature (k_B = 1). One step =
// one attempted change of a single free cell: the cell is drawn uniformly,
// the proposal uniformly from the n_states-1 values different from the
// current one (a symmetric kernel, so detailed balance needs no correction),
// and the move is accepted with probability min(1, exp(-dH/T)). At T = 0
// moves with dH <= 0 are accepted, so the chain can still walk along
// degenerate plateaus.
//
// The energy is cached and updated incrementally from the flipped cell's
// peers; a periodic full recompute guards the cache against drift.
//
// Draw order per step: (1) cell, (2) proposal value, (3) the acceptance
// uniform, drawn only when dH > 0. Replays are bit-identical given the seed.
class SamplerState {
public:
    SamplerState(const PuzzleSpec& spec, const PeerTable& peers, Grid initial,
                 double temperature, std::uint64_t seed)
        : spec_(&spec), peers_(&peers), grid_(std::move(initial)),
          temperature_(temperature), rng_(seed) {
        if (temperature < 0.0)
            throw std::invalid_argument("temperature must be >= 0");
        if (grid_.size() != spec.geometry.n_cells)
            throw std::invalid_argument("initial grid does not match the puzzle geometry");
        if (!spec.agrees_with_clues(grid_))
            throw std::invalid_argument("initial grid contradicts the puzzle's clues");
        energy_ = sudoku_potts::energy(grid_, peers);
        // acceptance lookup for the positive integer energy changes
        // (|dH| <= peers-per-cell); exp(-d/0) underflows to 0 as required
        accept_prob_.fill(0.0);
        if (temperature_ > 0.0)
            for (int d = 1; d <= peers.peers_per_cell; ++d)
                accept_prob_[d] = std::exp(-static_cast<double>(d) / temperature_);
    }

    StepResult metropolis_step() {
        const auto& free_cells = spec_->free_cells;
        const std::uint16_t cell =
            free_cells[rng_.next_below(static_cast<std::uint32_t>(free_cells.size()))];
        const std::uint8_t old_value = grid_[cell];
        std::uint8_t proposal = static_cast<std::uint8_t>(
            1 + rng_.next_below(static_cast<std::uint32_t>(spec_->geometry.n_states - 1)));
        if (proposal >= old_value) ++proposal;

        const std::uint16_t* peer =
            peers_->flat.data() + static_cast<std::size_t>(cell) * peers_->peers_per_cell;
        int gained = 0, lost = 0;
        for (int k = 0; k < peers_->peers_per_cell; ++k) {
            const std::uint8_t v = grid_[peer[k]];
            gained += (v == proposal);
            lost += (v == old_value);
        }
        const int delta = gained - lost;

        ++step_count_;
        const bool accept = delta <= 0 || rng_.next_double() < accept_prob_[delta];
        if (accept) {
            grid_[cell] = proposal;
            energy_ += delta;
            ++accepted_;
        }
        return {accept, cell, old_value, proposal, static_cast<std::int16_t>(delta)};
    }

    const Grid& grid() const { return grid_; }
    int energy() const { return energy_; }
    double temperature() const { return temperature_; }
    std::uint64_t step_count() const { return step_count_; }
    std::uint64_t accepted() const { return accepted_; }
    const PuzzleSpec& spec() const { return *spec_; }

    // full recompute; throws if the incremental cache drifted or a clue moved
    void validate() const {
        if (sudoku_potts::energy(grid_, *peers_) != energy_)
            throw std::logic_error("cached energy drifted from full recompute");
        if (!spec_->agrees_with_clues(grid_))
            throw std::logic_error("a clue cell changed value during sampling");
    }

private:
    const PuzzleSpec* spec_;
    const PeerTable* peers_;
    Grid grid_;
    int energy_ = 0;
    double temperature_;
    std::array<double, 21> accept_prob_{};  // index = dH, 1..peers_per_cell
    Rng rng_;
    std::uint64_t step_count_ = 0;
    std::uint64_t accepted_ = 0;
};

struct RunOptions {
    std::uint64_t n_steps = 0;   // attempted steps, including burn-in
    std::uint64_t burn_in = 0;
    std::uint64_t stride = 1;
    bool record_site_histogram = false;  // requires stride == 1
    bool keep_series = false;
    std::uint64_t validate_every = 1'000'000;  // 0 disables the cache check
    const Grid* initial_grid = nullptr;        // default: random_fill
};

// One trajectory: random-fill (or given) start, burn_in unrecorded steps,
// then a sample after every stride-th step. With a reference solution the
// recorded samples sitting exactly on it are counted for the ground-state
// fraction. Seed layout: derive_stream_seed(seed, 0) fills the start grid,
// derive_stream_seed(seed, 1) drives the chain.
Trajectory run_trajectory(const PuzzleSpec& spec, const PeerTable& peers,
                          double temperature, const RunOptions& options,
                          std::uint64_t seed, const Grid* reference_solution = nullptr);

// n_replicas independent trajectories at one temperature, each freshly
// randomized and recording only the final stats_window steps. Replica r runs
// run_trajectory with seed derive_stream_seed(rng_seed, r), so results are
// identical no matter how the replicas are scheduled.
std::vector<Trajectory> anneal_replicas(const PuzzleSpec& spec, const PeerTable& peers,
                                        double temperature, int n_replicas,
                                        std::uint64_t steps_per_replica,
                                        std::uint64_t stats_window, std::uint64_t rng_seed,
                                        const Grid* reference_solution = nullptr,
                                        bool record_site_histogram = true,
                                        bool keep_series = false, int n_threads = 1);

std::uint64_t spec_fingerprint(const PuzzleSpec& spec);

} // namespace sudoku_potts
