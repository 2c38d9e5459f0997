#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sudoku_potts/geometry.hpp"

namespace sudoku_potts {

// A complete microstate: every cell holds a value in 1..n_states.
struct Grid {
    std::vector<std::uint8_t> values;

    int size() const { return static_cast<int>(values.size()); }
    std::uint8_t operator[](int cell) const { return values[cell]; }
    std::uint8_t& operator[](int cell) { return values[cell]; }

    friend bool operator==(const Grid&, const Grid&) = default;
};

inline std::string to_text(const Grid& grid, const Geometry& geo) {
    std::string out;
    out.reserve(static_cast<std::size_t>(geo.n_cells) + geo.side);
    for (int r = 0; r < geo.side; ++r) {
        for (int c = 0; c < geo.side; ++c)
            out += static_cast<char>('0' + grid[geo.cell_index(r, c)]);
        out += '\n';
    }
    return out;
}

} // namespace sudoku_potts
