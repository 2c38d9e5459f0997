#include "sudoku_potts/observables.hpp"

#include <cmath>
#include <stdexcept>

namespace sudoku_potts {

namespace {

double batch_spread_stderr(std::span<const double> batch_values) {
    const std::size_t n = batch_values.size();
    if (n < 2) return 0.0;
    double mean = 0.0;
    for (const double v : batch_values) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (const double v : batch_values) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / (static_cast<double>(n - 1) * static_cast<double>(n)));
}

} // namespace

MeanStats mean_energy(const Trajectory& traj) {
    if (traj.n_samples == 0) throw std::invalid_argument("trajectory has no recorded samples");
    MeanStats stats;
    stats.n_samples = traj.n_samples;
    const auto n = static_cast<double>(traj.n_samples);
    stats.mean = static_cast<double>(traj.energy_sum) / n;
    stats.variance = static_cast<double>(traj.energy_sum_sq) / n - stats.mean * stats.mean;
    if (stats.variance < 0.0) stats.variance = 0.0;  // rounding guard

    std::vector<double> batch_means;
    batch_means.reserve(traj.batch_sums.size());
    for (std::size_t b = 0; b < traj.batch_sums.size(); ++b)
        if (traj.batch_sizes[b] > 0)
            batch_means.push_back(static_cast<double>(traj.batch_sums[b]) /
                                  static_cast<double>(traj.batch_sizes[b]));
    stats.stderr_mean = batch_means.size() >= 2
                            ? batch_spread_stderr(batch_means)
                            : std::sqrt(stats.variance / n);
    return stats;
}

double specific_heat(const Trajectory& traj, double temperature) {
    if (temperature <= 0.0)
        throw std::domain_error("specific heat is undefined at T <= 0");
    if (traj.n_samples < 2)
        throw std::invalid_argument("specific heat needs at least two samples");
    return mean_energy(traj).variance / (temperature * temperature);
}

CvStats specific_heat_stats(const Trajectory& traj, double temperature) {
    CvStats stats;
    stats.cv = specific_heat(traj, temperature);
    std::vector<double> batch_cvs;
    batch_cvs.reserve(traj.batch_sums.size());
    for (std::size_t b = 0; b < traj.batch_sums.size(); ++b) {
        const auto size = traj.batch_sizes[b];
        if (size < 2) continue;
        const double bn = static_cast<double>(size);
        const double mean = static_cast<double>(traj.batch_sums[b]) / bn;
        double var = static_cast<double>(traj.batch_sum_sqs[b]) / bn - mean * mean;
        if (var < 0.0) var = 0.0;
        batch_cvs.push_back(var / (temperature * temperature));
    }
    stats.stderr_cv = batch_spread_stderr(batch_cvs);
    return stats;
}

double ground_state_fraction(const Trajectory& traj) {
    if (!traj.has_reference)
        throw std::invalid_argument("trajectory was run without a reference solution");
    if (traj.n_samples == 0) throw std::invalid_argument("trajectory has no recorded samples");
    return static_cast<double>(traj.ground_state_hits) / static_cast<double>(traj.n_samples);
}

SiteProbabilities accumulate_site_probabilities(std::span<const Trajectory> trajectories) {
    if (trajectories.empty())
        throw std::invalid_argument("no trajectories to accumulate");
    const Trajectory& first = trajectories.front();
    if (!first.records_sites())
        throw std::invalid_argument("trajectory recorded no site histograms");

    SiteProbabilities probs;
    probs.n_cells = first.n_cells;
    probs.n_states = first.n_states;
    probs.p.assign(first.site_counts.size(), 0.0);

    std::vector<std::uint64_t> pooled(first.site_counts.size(), 0);
    for (const Trajectory& traj : trajectories) {
        if (traj.spec_fingerprint != first.spec_fingerprint)
            throw std::invalid_argument("trajectories come from different puzzles");
        if (!traj.records_sites())
            throw std::invalid_argument("trajectory recorded no site histograms");
        for (std::size_t i = 0; i < pooled.size(); ++i) pooled[i] += traj.site_counts[i];
        probs.sample_count += traj.n_samples;
    }
    if (probs.sample_count == 0)
        throw std::invalid_argument("trajectories hold no recorded samples");

    const double norm = 1.0 / static_cast<double>(probs.sample_count);
    for (std::size_t i = 0; i < pooled.size(); ++i)
        probs.p[i] = static_cast<double>(pooled[i]) * norm;
    return probs;
}

ShannonEntropy shannon_entropy(const SiteProbabilities& probs) {
    double s = 0.0;
    for (const double p : probs.p)
        if (p > 0.0) s -= p * std::log(p);
    return {s, s / static_cast<double>(probs.n_cells)};
}

} // namespace sudoku_potts
