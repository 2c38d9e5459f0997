#pragma once

#include <array>
#include <stdexcept>

#include "sudoku_potts/grid.hpp"
#include "sudoku_potts/peer_table.hpp"

namespace sudoku_potts {

// The energy of a grid is the number of unordered peer pairs holding equal
// values. The literal Potts double sum counts every pair twice; we count each
// pair once, so the double-sum value is exactly 2x this one. All temperatures
// in this project refer to the pair-once convention.
//
// H = 0 if and only if the grid satisfies every sudoku constraint.
inline int energy(const Grid& grid, const PeerTable& peers) {
    if (grid.size() != peers.geometry.n_cells)
        throw std::invalid_argument("grid/peer-table geometry mismatch");
    int conflicts = 0;
    for (int cell = 0; cell < grid.size(); ++cell) {
        const auto v = grid[cell];
        for (const auto peer : peers.peers(cell))
            conflicts += (peer > cell && grid[peer] == v);  // each pair once
    }
    return conflicts;
}

// Energy change of the single-cell move cell <- new_value, from the cell's
// peers only: (# peers at new_value) - (# peers at current value). O(peers),
// independent of grid size.
inline int delta_energy(const Grid& grid, const PeerTable& peers, int cell,
                        int new_value) {
    const auto old_value = grid[cell];
    int gained = 0, lost = 0;
    for (const auto peer : peers.peers(cell)) {
        const auto v = grid[peer];
        gained += (v == new_value);
        lost += (v == old_value);
    }
    return gained - lost;
}

// Histogram over 1..n_states of the values held by a cell's peers.
// counts[v] peers hold v; counts[0] is unused. Shared kernel behind
// delta_energy: delta(cell, v) == counts[v] - counts[current].
inline std::array<int, 10> conflict_counts(const Grid& grid, const PeerTable& peers,
                                           int cell) {
    std::array<int, 10> counts{};
    for (const auto peer : peers.peers(cell)) ++counts[grid[peer]];
    return counts;
}

} // namespace sudoku_potts
