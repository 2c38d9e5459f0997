#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sudoku_potts/trajectory.hpp"

namespace sudoku_potts {

struct MeanStats {
    double mean = 0.0;
    double variance = 0.0;     // population variance of the recorded samples
    double stderr_mean = 0.0;  // batch means over the trajectory's partition
    std::uint64_t n_samples = 0;
};

// Mean recorded energy with variance and a batch-means standard error
// (kBatchCount batches absorb the autocorrelation of consecutive samples).
MeanStats mean_energy(const Trajectory& traj);

// c_v = <(H - <H>)^2> / T^2 over the recorded samples. T = 0 is undefined
// and reported as an error, never as a silent infinity.
double specific_heat(const Trajectory& traj, double temperature);

struct CvStats {
    double cv = 0.0;
    double stderr_cv = 0.0;  // spread of per-batch specific heats
};
CvStats specific_heat_stats(const Trajectory& traj, double temperature);

// Share of recorded samples spent exactly at the reference solution.
double ground_state_fraction(const Trajectory& traj);

// Ensemble-averaged probability of finding value k at each cell.
// Pooling all supplied trajectories is what distinguishes the two averaging
// regimes: a list of one gives the single-trajectory average, a list of many
// independently annealed replicas the multi-anneal average (whose excess at
// low temperature is the residual glass entropy).
struct SiteProbabilities {
    int n_cells = 0;
    int n_states = 0;
    std::vector<double> p;  // n_cells * n_states, value-major per cell
    std::uint64_t sample_count = 0;

    double at(int cell, int value) const {
        return p[static_cast<std::size_t>(cell) * n_states + value - 1];
    }
};

SiteProbabilities accumulate_site_probabilities(std::span<const Trajectory> trajectories);

// S = -sum p ln p over all cells and values, with 0 ln 0 = 0. Reported raw
// and normalized per site (all sites, not just free ones; deterministic
// cells contribute nothing either way).
struct ShannonEntropy {
    double raw = 0.0;
    double per_site = 0.0;
};

ShannonEntropy shannon_entropy(const SiteProbabilities& probs);

} // namespace sudoku_potts
