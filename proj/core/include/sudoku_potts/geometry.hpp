#pragma once

#include <stdexcept>
#include <string>

namespace sudoku_potts {

// Grid geometry for a box_size x box_size sudoku: box_size = 3 is the
// standard 9x9 puzzle, box_size = 2 the 4x4 "shidoku" used as an
// exhaustively enumerable test system.
struct Geometry {
    int box_size;  // b
    int side;      // b^2, cells per row and number of values
    int n_cells;   // side^2
    int n_states;  // = side, values run 1..n_states

    int row_of(int cell) const { return cell / side; }
    int col_of(int cell) const { return cell % side; }
    int box_of(int cell) const {
        return (row_of(cell) / box_size) * box_size + col_of(cell) / box_size;
    }
    int cell_index(int row, int col) const { return row * side + col; }

    // peers per cell: (side-1) row + (side-1) col + box cells off the cross
    int peers_per_cell() const {
        return 3 * side - 2 * box_size - 1;
    }
    // unordered peer pairs in the whole grid (810 for box_size 3)
    int total_peer_pairs() const { return n_cells * peers_per_cell() / 2; }

    friend bool operator==(const Geometry&, const Geometry&) = default;
};

inline Geometry make_geometry(int box_size) {
    if (box_size != 2 && box_size != 3)
        throw std::invalid_argument("unsupported box size " + std::to_string(box_size) +
                                    " (supported: 2, 3)");
    const int side = box_size * box_size;
    return Geometry{box_size, side, side * side, side};
}

// deduce geometry from a cell count (16 -> box 2, 81 -> box 3)
inline Geometry geometry_for_cell_count(int n_cells) {
    if (n_cells == 16) return make_geometry(2);
    if (n_cells == 81) return make_geometry(3);
    throw std::invalid_argument("no supported geometry has " + std::to_string(n_cells) +
                                " cells");
}

} // namespace sudoku_potts
