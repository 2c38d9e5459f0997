#pragma once

#include <cstdint>
#include <vector>

#include "sudoku_potts/grid.hpp"

namespace sudoku_potts {

// Measurement record of one Monte Carlo run. Energy statistics are kept as
// exact integer accumulators (sums fit u64 even at the 10^9-step paper
// protocol), so merging trajectories is associative and parallel schedules
// cannot change any result. A fixed partition into at most 20 batches feeds
// the batch-means error bars; the full energy series is stored only on
// request.
struct Trajectory {
    // run identification
    double temperature = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t n_steps = 0;    // attempted steps including burn-in
    std::uint64_t burn_in = 0;
    std::uint64_t stride = 1;

    // spec identity, for pooling safety checks
    int n_cells = 0;
    int n_states = 0;
    std::uint64_t spec_fingerprint = 0;

    // recorded energy statistics
    std::uint64_t n_samples = 0;
    std::uint64_t energy_sum = 0;
    std::uint64_t energy_sum_sq = 0;
    std::vector<std::uint64_t> batch_sums;
    std::vector<std::uint64_t> batch_sum_sqs;
    std::vector<std::uint64_t> batch_sizes;

    // ground-state bookkeeping (needs a reference solution)
    bool has_reference = false;
    std::uint64_t ground_state_hits = 0;  // samples exactly at the reference grid
    std::uint64_t zero_energy_hits = 0;   // samples at any H = 0 microstate

    // kinetics
    std::uint64_t accepted = 0;  // accepted moves over the whole run

    // per-(cell,value) occupancy counts over the recorded window, optional
    std::vector<std::uint64_t> site_counts;  // n_cells * n_states, value-major per cell

    // full recorded energy series, optional
    std::vector<std::int32_t> series;

    Grid final_grid;
    int final_energy = 0;

    bool records_sites() const { return !site_counts.empty(); }

    friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

// number of batches used for batch-means error bars
inline constexpr int kBatchCount = 20;

// Fixed batch partition for a planned number of samples: min(kBatchCount, n)
// batches, the first (n mod B) of them one sample longer.
std::vector<std::uint64_t> batch_partition(std::uint64_t n_samples);

// Test/synthesis helper: a trajectory holding a given recorded energy series
// (with the same accumulator layout a real run would produce).
Trajectory trajectory_from_series(const std::vector<std::int32_t>& energies,
                                  double temperature);

} // namespace sudoku_potts
