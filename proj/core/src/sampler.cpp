#include "sudoku_potts/sampler.hpp"

#include "sudoku_potts/parallel.hpp"
#include "sudoku_potts/variants.hpp"

namespace sudoku_potts {

std::uint64_t spec_fingerprint(const PuzzleSpec& spec) {
    // FNV-1a over geometry and clue bytes
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::uint8_t byte) {
        h ^= byte;
        h *= 0x100000001b3ULL;
    };
    mix(static_cast<std::uint8_t>(spec.geometry.box_size));
    for (const auto v : spec.clue_values) mix(v);
    return h;
}

Trajectory run_trajectory(const PuzzleSpec& spec, const PeerTable& peers,
                          double temperature, const RunOptions& options,
                          std::uint64_t seed, const Grid* reference_solution) {
    if (spec.free_cells.empty())
        throw std::invalid_argument("puzzle has no free cells, no dynamics possible");
    if (options.n_steps <= options.burn_in)
        throw std::invalid_argument("n_steps must exceed burn_in");
    if (options.stride == 0) throw std::invalid_argument("stride must be >= 1");
    if (options.record_site_histogram && options.stride != 1)
        throw std::invalid_argument("site histograms require stride 1");
    if (reference_solution && reference_solution->size() != spec.geometry.n_cells)
        throw std::invalid_argument("reference solution has the wrong geometry");

    Grid start = options.initial_grid ? *options.initial_grid
                                      : random_fill(spec, derive_stream_seed(seed, 0));
    SamplerState state(spec, peers, std::move(start), temperature,
                       derive_stream_seed(seed, 1));

    Trajectory traj;
    traj.temperature = temperature;
    traj.seed = seed;
    traj.n_steps = options.n_steps;
    traj.burn_in = options.burn_in;
    traj.stride = options.stride;
    traj.n_cells = spec.geometry.n_cells;
    traj.n_states = spec.geometry.n_states;
    traj.spec_fingerprint = spec_fingerprint(spec);
    traj.has_reference = reference_solution != nullptr;

    const std::uint64_t planned_samples = (options.n_steps - options.burn_in) / options.stride;
    traj.batch_sizes = batch_partition(planned_samples);
    traj.batch_sums.assign(traj.batch_sizes.size(), 0);
    traj.batch_sum_sqs.assign(traj.batch_sizes.size(), 0);
    if (options.keep_series) traj.series.reserve(planned_samples);

    // mismatch count against the reference, maintained per accepted move;
    // clue cells never flip, so their contribution is a constant
    int mismatches = 0;
    if (reference_solution)
        for (int cell = 0; cell < spec.geometry.n_cells; ++cell)
            mismatches += (state.grid()[cell] != (*reference_solution)[cell]);

    // Occupancy bookkeeping (stride 1 only): instead of adding the whole grid
    // at every sample, remember for each cell the last sample index already
    // credited and settle the interval when the cell flips (and once at the
    // end). Exact and O(1) per accepted move.
    const int n_states = spec.geometry.n_states;
    std::vector<std::uint64_t> last_credited;
    if (options.record_site_histogram) {
        traj.site_counts.assign(
            static_cast<std::size_t>(spec.geometry.n_cells) * n_states, 0);
        last_credited.assign(spec.geometry.n_cells, 0);
    }

    const std::uint64_t validate_every = options.validate_every;
    std::uint64_t next_validation = validate_every == 0 ? 0 : validate_every;

    for (std::uint64_t step = 1; step <= options.burn_in; ++step) {
        const StepResult move = state.metropolis_step();
        if (reference_solution && move.accepted) {
            const auto ref = (*reference_solution)[move.cell];
            mismatches += (move.new_value != ref) - (move.old_value != ref);
        }
        if (validate_every && step == next_validation) {
            state.validate();
            next_validation += validate_every;
        }
    }

    std::size_t batch = 0;
    std::uint64_t left_in_batch = traj.batch_sizes.empty() ? 0 : traj.batch_sizes[0];
    std::uint64_t sample_index = 0;  // 1-based once recording starts
    std::uint64_t until_sample = options.stride;

    for (std::uint64_t step = options.burn_in + 1; step <= options.n_steps; ++step) {
        const StepResult move = state.metropolis_step();

        if (options.record_site_histogram && move.accepted) {
            // the old value held this cell for samples (last+1 .. sample_index)
            auto* cell_counts =
                traj.site_counts.data() + static_cast<std::size_t>(move.cell) * n_states;
            cell_counts[move.old_value - 1] += sample_index - last_credited[move.cell];
            last_credited[move.cell] = sample_index;
        }
        if (reference_solution && move.accepted) {
            const auto ref = (*reference_solution)[move.cell];
            mismatches += (move.new_value != ref) - (move.old_value != ref);
        }

        if (--until_sample == 0) {
            until_sample = options.stride;
            ++sample_index;
            const auto e = static_cast<std::uint64_t>(state.energy());
            traj.energy_sum += e;
            traj.energy_sum_sq += e * e;
            while (left_in_batch == 0 && batch + 1 < traj.batch_sizes.size())
                left_in_batch = traj.batch_sizes[++batch];
            if (!traj.batch_sizes.empty()) {
                traj.batch_sums[batch] += e;
                traj.batch_sum_sqs[batch] += e * e;
                --left_in_batch;
            }
            if (options.keep_series) traj.series.push_back(state.energy());
            traj.zero_energy_hits += (state.energy() == 0);
            if (reference_solution) traj.ground_state_hits += (mismatches == 0);
        }

        if (validate_every && step == next_validation) {
            state.validate();
            next_validation += validate_every;
        }
    }
    traj.n_samples = sample_index;

    if (options.record_site_histogram) {
        for (int cell = 0; cell < spec.geometry.n_cells; ++cell) {
            auto* cell_counts =
                traj.site_counts.data() + static_cast<std::size_t>(cell) * n_states;
            cell_counts[state.grid()[cell] - 1] += sample_index - last_credited[cell];
        }
    }

    traj.accepted = state.accepted();
    traj.final_grid = state.grid();
    traj.final_energy = state.energy();
    return traj;
}

std::vector<Trajectory> anneal_replicas(const PuzzleSpec& spec, const PeerTable& peers,
                                        double temperature, int n_replicas,
                                        std::uint64_t steps_per_replica,
                                        std::uint64_t stats_window, std::uint64_t rng_seed,
                                        const Grid* reference_solution,
                                        bool record_site_histogram, bool keep_series,
                                        int n_threads) {
    if (n_replicas < 1) throw std::invalid_argument("need at least one replica");
    if (stats_window > steps_per_replica || stats_window == 0)
        throw std::invalid_argument("stats window must be in [1, steps_per_replica]");

    RunOptions options;
    options.n_steps = steps_per_replica;
    options.burn_in = steps_per_replica - stats_window;
    options.stride = 1;
    options.record_site_histogram = record_site_histogram;
    options.keep_series = keep_series;

    std::vector<Trajectory> replicas(static_cast<std::size_t>(n_replicas));
    parallel_for(replicas.size(), n_threads, [&](std::size_t r) {
        replicas[r] = run_trajectory(spec, peers, temperature, options,
                                     derive_stream_seed(rng_seed, r), reference_solution);
    });
    return replicas;
}

} // namespace sudoku_potts
