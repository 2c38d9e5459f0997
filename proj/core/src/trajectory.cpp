#include "sudoku_potts/trajectory.hpp"

#include <algorithm>

namespace sudoku_potts {

std::vector<std::uint64_t> batch_partition(std::uint64_t n_samples) {
    const auto n_batches = std::min<std::uint64_t>(kBatchCount, n_samples);
    std::vector<std::uint64_t> sizes(n_batches, 0);
    if (n_batches == 0) return sizes;
    const std::uint64_t base = n_samples / n_batches;
    const std::uint64_t extra = n_samples % n_batches;
    for (std::uint64_t b = 0; b < n_batches; ++b) sizes[b] = base + (b < extra ? 1 : 0);
    return sizes;
}

Trajectory trajectory_from_series(const std::vector<std::int32_t>& energies,
                                  double temperature) {
    Trajectory traj;
    traj.temperature = temperature;
    traj.n_steps = energies.size();
    traj.stride = 1;
    traj.series = energies;
    traj.n_samples = energies.size();
    traj.batch_sizes = batch_partition(traj.n_samples);
    traj.batch_sums.assign(traj.batch_sizes.size(), 0);
    traj.batch_sum_sqs.assign(traj.batch_sizes.size(), 0);
    std::size_t batch = 0, left_in_batch = traj.batch_sizes.empty() ? 0 : traj.batch_sizes[0];
    for (const auto e : energies) {
        const auto u = static_cast<std::uint64_t>(e);
        traj.energy_sum += u;
        traj.energy_sum_sq += u * u;
        while (left_in_batch == 0 && batch + 1 < traj.batch_sizes.size())
            left_in_batch = traj.batch_sizes[++batch];
        traj.batch_sums[batch] += u;
        traj.batch_sum_sqs[batch] += u * u;
        --left_in_batch;
        traj.zero_energy_hits += (e == 0);
    }
    if (!energies.empty()) traj.final_energy = energies.back();
    return traj;
}

} // namespace sudoku_potts
