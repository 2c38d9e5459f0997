#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sudoku_potts/geometry.hpp"

namespace sudoku_potts {

// Precomputed constraint graph: for every cell, the sorted indices of the
// cells sharing its row, column or subgrid. Every cell has the same number
// of peers (20 for 9x9, 7 for 4x4), so the table is a flat array with a
// fixed stride.
struct PeerTable {
    Geometry geometry;
    int peers_per_cell = 0;
    std::vector<std::uint16_t> flat;  // n_cells * peers_per_cell entries

    std::span<const std::uint16_t> peers(int cell) const {
        return {flat.data() + static_cast<std::size_t>(cell) * peers_per_cell,
                static_cast<std::size_t>(peers_per_cell)};
    }
};

PeerTable build_peer_table(const Geometry& geo);

} // namespace sudoku_potts
