#include "sudoku_potts/peer_table.hpp"

#include <algorithm>

namespace sudoku_potts {

PeerTable build_peer_table(const Geometry& geo) {
    PeerTable table;
    table.geometry = geo;
    table.peers_per_cell = geo.peers_per_cell();
    table.flat.reserve(static_cast<std::size_t>(geo.n_cells) * table.peers_per_cell);

    std::vector<std::uint16_t> peers;
    for (int cell = 0; cell < geo.n_cells; ++cell) {
        peers.clear();
        const int row = geo.row_of(cell), col = geo.col_of(cell), box = geo.box_of(cell);
        for (int other = 0; other < geo.n_cells; ++other) {
            if (other == cell) continue;
            if (geo.row_of(other) == row || geo.col_of(other) == col ||
                geo.box_of(other) == box)
                peers.push_back(static_cast<std::uint16_t>(other));
        }
        std::sort(peers.begin(), peers.end());
        table.flat.insert(table.flat.end(), peers.begin(), peers.end());
    }
    return table;
}

} // namespace sudoku_potts
