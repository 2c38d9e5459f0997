#include "sudoku_potts/exact.hpp"

#include <cmath>

#include "sudoku_potts/hamiltonian.hpp"
#include "sudoku_potts/peer_table.hpp"

namespace sudoku_potts {

namespace {

struct Enumeration {
    int base_energy = 0;                      // clue-clue conflicts
    int max_energy = 0;
    std::vector<std::uint64_t> by_energy;     // N[H]
    // per (free index, value): histogram of total energies, flattened
    std::vector<std::uint64_t> site_by_energy;
};

} // namespace

ExactTable exact_reference(const PuzzleSpec& spec, std::span<const double> temperatures,
                           std::uint64_t state_cap) {
    const Geometry& geo = spec.geometry;
    const int n_free = static_cast<int>(spec.free_cells.size());
    const int n_states = geo.n_states;

    double total_states = 1.0;
    for (int i = 0; i < n_free; ++i) total_states *= n_states;
    if (total_states > static_cast<double>(state_cap))
        throw StateSpaceCapExceeded(std::to_string(n_states) + "^" +
                                    std::to_string(n_free) +
                                    " microstates exceed the cap of " +
                                    std::to_string(state_cap));
    for (const double t : temperatures)
        if (t <= 0.0) throw std::invalid_argument("exact reference needs T > 0");

    const PeerTable peers = build_peer_table(geo);
    Grid grid = clue_grid(spec);

    // clue-clue conflicts are a constant offset present in every completion
    int base = 0;
    for (int cell = 0; cell < geo.n_cells; ++cell) {
        if (spec.clue_values[cell] == 0) continue;
        for (const auto peer : peers.peers(cell))
            base += (peer > cell && spec.clue_values[peer] == spec.clue_values[cell]);
    }

    const int h_cap = base + geo.total_peer_pairs() + 1;
    Enumeration acc;
    acc.base_energy = base;
    acc.by_energy.assign(static_cast<std::size_t>(h_cap), 0);
    acc.site_by_energy.assign(
        static_cast<std::size_t>(n_free) * n_states * h_cap, 0);

    // DFS over free cells in ascending order, carrying the exact partial
    // energy: assigning cell <- v adds one conflict per already-set peer at v
    std::vector<int> depth_energy(static_cast<std::size_t>(n_free) + 1, base);
    std::vector<std::uint8_t> choice(static_cast<std::size_t>(n_free), 0);
    int depth = 0;
    while (depth >= 0) {
        if (depth == n_free) {
            const int h = depth_energy[depth];
            ++acc.by_energy[h];
            for (int i = 0; i < n_free; ++i)
                ++acc.site_by_energy[(static_cast<std::size_t>(i) * n_states + choice[i] - 1) *
                                         h_cap +
                                     h];
            --depth;
            continue;
        }
        const int cell = spec.free_cells[depth];
        std::uint8_t next = choice[depth] + 1;
        if (next > n_states) {
            choice[depth] = 0;
            grid[cell] = 0;
            --depth;
            continue;
        }
        choice[depth] = next;
        int conflicts = 0;
        for (const auto peer : peers.peers(cell)) conflicts += (grid[peer] == next);
        grid[cell] = next;
        depth_energy[depth + 1] = depth_energy[depth] + conflicts;
        ++depth;
    }

    ExactTable table;
    table.n_microstates = static_cast<std::uint64_t>(total_states);
    table.energy_histogram = acc.by_energy;
    table.min_energy = 0;
    while (table.min_energy < h_cap && acc.by_energy[table.min_energy] == 0)
        ++table.min_energy;
    table.ground_degeneracy = acc.by_energy[table.min_energy];

    for (const double t : temperatures) {
        ExactPoint point;
        point.temperature = t;

        // Boltzmann weights relative to the minimum energy
        std::vector<double> weight(static_cast<std::size_t>(h_cap), 0.0);
        double z = 0.0, sum_h = 0.0, sum_h2 = 0.0;
        for (int h = table.min_energy; h < h_cap; ++h) {
            if (acc.by_energy[h] == 0) continue;
            const double w = std::exp(-static_cast<double>(h - table.min_energy) / t);
            weight[h] = w;
            const double nw = static_cast<double>(acc.by_energy[h]) * w;
            z += nw;
            sum_h += nw * h;
            sum_h2 += nw * static_cast<double>(h) * h;
        }
        point.mean_energy = sum_h / z;
        point.var_energy = sum_h2 / z - point.mean_energy * point.mean_energy;
        if (point.var_energy < 0.0) point.var_energy = 0.0;
        point.specific_heat = point.var_energy / (t * t);

        SiteProbabilities probs;
        probs.n_cells = geo.n_cells;
        probs.n_states = n_states;
        probs.sample_count = 0;  // exact, not sampled
        probs.p.assign(static_cast<std::size_t>(geo.n_cells) * n_states, 0.0);
        for (int cell = 0; cell < geo.n_cells; ++cell)
            if (spec.clue_values[cell] != 0)
                probs.p[static_cast<std::size_t>(cell) * n_states +
                        spec.clue_values[cell] - 1] = 1.0;
        for (int i = 0; i < n_free; ++i) {
            const int cell = spec.free_cells[i];
            for (int v = 1; v <= n_states; ++v) {
                const std::uint64_t* hist =
                    acc.site_by_energy.data() +
                    (static_cast<std::size_t>(i) * n_states + v - 1) * h_cap;
                double num = 0.0;
                for (int h = table.min_energy; h < h_cap; ++h)
                    if (hist[h] != 0) num += static_cast<double>(hist[h]) * weight[h];
                probs.p[static_cast<std::size_t>(cell) * n_states + v - 1] = num / z;
            }
        }
        point.entropy = shannon_entropy(probs);
        point.site_probabilities = std::move(probs);
        table.points.push_back(std::move(point));
    }
    return table;
}

} // namespace sudoku_potts
