#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sudoku_potts/geometry.hpp"
#include "sudoku_potts/grid.hpp"

namespace sudoku_potts {

// Immutable puzzle definition: which cells are clues (fixed spins) and which
// are free (dynamic variables). clue_values[cell] == 0 marks a free cell.
struct PuzzleSpec {
    Geometry geometry;
    std::vector<std::uint8_t> clue_values;   // size n_cells, 0 = free
    std::vector<std::uint16_t> free_cells;   // ascending cell indices
    std::string label;                       // opaque source id / difficulty tag

    int clue_count() const {
        return geometry.n_cells - static_cast<int>(free_cells.size());
    }
    bool is_clue(int cell) const { return clue_values[cell] != 0; }

    // does the grid hold every clue value?
    bool agrees_with_clues(const Grid& grid) const;

    friend bool operator==(const PuzzleSpec&, const PuzzleSpec&) = default;
};

// Build a spec from a full clue array (0 = free); validates ranges and
// derives the sorted free-cell list.
PuzzleSpec make_spec(const Geometry& geo, std::vector<std::uint8_t> clue_values,
                     std::string label = {});

PuzzleSpec empty_spec(const Geometry& geo, std::string label = {});

// Puzzle text format: n_cells significant characters in row-major order,
// digits are clues, '.' or '0' free cells, all whitespace ignored.
PuzzleSpec parse_puzzle(const std::string& text, const Geometry& geo,
                        std::string label = {});

// parse with geometry deduced from the significant character count
PuzzleSpec parse_puzzle(const std::string& text, std::string label = {});

std::string serialize_puzzle(const PuzzleSpec& spec);

// Collection file: one puzzle per line, optional trailing "# label" comment.
// Blank lines and pure comment lines are skipped.
std::vector<PuzzleSpec> parse_collection(std::istream& in);
std::vector<PuzzleSpec> load_collection(const std::string& path);

// grid consisting of the clues plus `fill` (default 0) elsewhere; mainly a
// building block for random_fill and solvers
Grid clue_grid(const PuzzleSpec& spec, std::uint8_t fill = 0);

} // namespace sudoku_potts
