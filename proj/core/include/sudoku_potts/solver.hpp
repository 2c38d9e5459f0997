#pragma once

#include <cstdint>
#include <optional>

#include "sudoku_potts/grid.hpp"
#include "sudoku_potts/puzzle.hpp"

namespace sudoku_potts {

// Exact number of zero-energy completions, capped: returns min(cap, count).
// Backtracking over the most-constrained-cell-first order with incrementally
// maintained candidate sets; fully deterministic. The cap makes multiplicity
// classification (cap 2) cheap even for puzzles with astronomically many
// completions.
std::uint64_t count_solutions(const PuzzleSpec& spec, std::uint64_t cap);

// First zero-energy completion in the deterministic search order, or nullopt
// if the puzzle is unsatisfiable. Repeated calls always return the same grid.
std::optional<Grid> solve_one(const PuzzleSpec& spec);

// A full constraint-satisfying grid with the candidate values tried in a
// seeded random order at every branch point; deterministic given the seed.
// Used to manufacture reference solutions for variant suites.
Grid random_solution(const Geometry& geo, std::uint64_t seed);

// multiplicity class used throughout the experiment tables: "0", "1" or ">=2"
// (count_solutions with cap 2)
std::string classify_multiplicity(const PuzzleSpec& spec);

} // namespace sudoku_potts
