#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "sudoku_potts/grid.hpp"
#include "sudoku_potts/puzzle.hpp"

namespace sudoku_potts {

// Over-/under-constrained variant of a puzzle: raises the clue count by
// fixing extra cells to their reference-solution values, or lowers it by
// releasing existing clues. Cells are drawn uniformly without replacement
// with a seeded generator, so a variant suite is reproducible everywhere.
PuzzleSpec make_variant(const PuzzleSpec& spec, const Grid& reference,
                        int target_clue_count, std::uint64_t rng_seed);

// Adds one clue that conflicts with every completion, turning the puzzle
// into a frustrated system with a strictly positive minimum energy.
// Candidate (cell, value) pairs are tested in seeded random order with
// count_solutions until one closes the last solution off.
PuzzleSpec make_frustrated(const PuzzleSpec& spec, std::uint64_t rng_seed);

// Grid agreeing with the clues, every free cell independently uniform over
// 1..n_states. Free cells are filled in ascending index order, one draw each.
Grid random_fill(const PuzzleSpec& spec, std::uint64_t rng_seed);

// Four cells (r1,c1),(r1,c2),(r2,c1),(r2,c2) of a solved grid whose two
// values can be swapped to give a different solved grid (r1 and r2 in the
// same band, or the column-wise mirror image). Any puzzle whose clues avoid
// all four cells has at least two solutions; used to build multiple-solution
// variants at high clue counts where random subsets are almost always unique.
std::optional<std::array<std::uint16_t, 4>> find_swap_rectangle(const Grid& solution,
                                                                const Geometry& geo);

} // namespace sudoku_potts
