#include "sudoku_potts/variants.hpp"

#include <algorithm>
#include <stdexcept>

#include "sudoku_potts/hamiltonian.hpp"
#include "sudoku_potts/rng.hpp"
#include "sudoku_potts/solver.hpp"

namespace sudoku_potts {

namespace {

// first k elements of a seeded uniform shuffle (partial Fisher-Yates)
std::vector<std::uint16_t> sample_without_replacement(std::vector<std::uint16_t> pool,
                                                      std::size_t k, Rng& rng) {
    for (std::size_t i = 0; i < k; ++i) {
        const auto j = i + rng.next_below(static_cast<std::uint32_t>(pool.size() - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
}

} // namespace

PuzzleSpec make_variant(const PuzzleSpec& spec, const Grid& reference,
                        int target_clue_count, std::uint64_t rng_seed) {
    if (target_clue_count < 0 || target_clue_count > spec.geometry.n_cells)
        throw std::invalid_argument("target clue count out of range");
    if (!spec.agrees_with_clues(reference))
        throw std::invalid_argument("reference grid contradicts the puzzle's clues");
    if (energy(reference, build_peer_table(spec.geometry)) != 0)
        throw std::invalid_argument("reference grid is not a solution");

    const int current = spec.clue_count();
    auto clues = spec.clue_values;
    Rng rng(rng_seed);

    if (target_clue_count > current) {
        const auto picked = sample_without_replacement(
            spec.free_cells, static_cast<std::size_t>(target_clue_count - current), rng);
        for (const auto cell : picked) clues[cell] = reference[cell];
    } else if (target_clue_count < current) {
        std::vector<std::uint16_t> clue_cells;
        for (int cell = 0; cell < spec.geometry.n_cells; ++cell)
            if (spec.clue_values[cell] != 0)
                clue_cells.push_back(static_cast<std::uint16_t>(cell));
        const auto picked = sample_without_replacement(
            std::move(clue_cells), static_cast<std::size_t>(current - target_clue_count), rng);
        for (const auto cell : picked) clues[cell] = 0;
    }
    return make_spec(spec.geometry, std::move(clues), spec.label);
}

PuzzleSpec make_frustrated(const PuzzleSpec& spec, std::uint64_t rng_seed) {
    if (spec.free_cells.empty())
        throw std::invalid_argument("make_frustrated needs at least one free cell");

    // all (free cell, value) pairs in a seeded random order
    std::vector<std::uint32_t> candidates;
    candidates.reserve(spec.free_cells.size() * spec.geometry.n_states);
    for (const auto cell : spec.free_cells)
        for (int v = 1; v <= spec.geometry.n_states; ++v)
            candidates.push_back(static_cast<std::uint32_t>(cell) << 8 | v);
    Rng rng(rng_seed);
    for (std::size_t i = candidates.size(); i > 1; --i)
        std::swap(candidates[i - 1], candidates[rng.next_below(static_cast<std::uint32_t>(i))]);

    for (const auto packed : candidates) {
        const int cell = static_cast<int>(packed >> 8);
        const auto value = static_cast<std::uint8_t>(packed & 0xff);
        auto clues = spec.clue_values;
        clues[cell] = value;
        PuzzleSpec candidate = make_spec(spec.geometry, std::move(clues), spec.label);
        if (count_solutions(candidate, 1) == 0) return candidate;
    }
    throw std::runtime_error("no single added clue frustrates this puzzle");
}

Grid random_fill(const PuzzleSpec& spec, std::uint64_t rng_seed) {
    Rng rng(rng_seed);
    Grid grid = clue_grid(spec);
    for (const auto cell : spec.free_cells)
        grid[cell] = static_cast<std::uint8_t>(
            1 + rng.next_below(static_cast<std::uint32_t>(spec.geometry.n_states)));
    return grid;
}

std::optional<std::array<std::uint16_t, 4>> find_swap_rectangle(const Grid& solution,
                                                                const Geometry& geo) {
    // rows in the same band, any column pair: both columns then keep their
    // value pair inside one box, so the swapped grid is again a solution
    for (int band = 0; band < geo.box_size; ++band) {
        for (int r1 = band * geo.box_size; r1 < (band + 1) * geo.box_size; ++r1) {
            for (int r2 = r1 + 1; r2 < (band + 1) * geo.box_size; ++r2) {
                for (int c1 = 0; c1 < geo.side; ++c1) {
                    for (int c2 = c1 + 1; c2 < geo.side; ++c2) {
                        const auto a = solution[geo.cell_index(r1, c1)];
                        const auto b = solution[geo.cell_index(r1, c2)];
                        if (solution[geo.cell_index(r2, c1)] == b &&
                            solution[geo.cell_index(r2, c2)] == a)
                            return std::array<std::uint16_t, 4>{
                                static_cast<std::uint16_t>(geo.cell_index(r1, c1)),
                                static_cast<std::uint16_t>(geo.cell_index(r1, c2)),
                                static_cast<std::uint16_t>(geo.cell_index(r2, c1)),
                                static_cast<std::uint16_t>(geo.cell_index(r2, c2))};
                    }
                }
            }
        }
    }
    // column-wise mirror: columns in the same stack, any row pair
    for (int stack = 0; stack < geo.box_size; ++stack) {
        for (int c1 = stack * geo.box_size; c1 < (stack + 1) * geo.box_size; ++c1) {
            for (int c2 = c1 + 1; c2 < (stack + 1) * geo.box_size; ++c2) {
                for (int r1 = 0; r1 < geo.side; ++r1) {
                    for (int r2 = r1 + 1; r2 < geo.side; ++r2) {
                        const auto a = solution[geo.cell_index(r1, c1)];
                        const auto b = solution[geo.cell_index(r2, c1)];
                        if (solution[geo.cell_index(r1, c2)] == b &&
                            solution[geo.cell_index(r2, c2)] == a)
                            return std::array<std::uint16_t, 4>{
                                static_cast<std::uint16_t>(geo.cell_index(r1, c1)),
                                static_cast<std::uint16_t>(geo.cell_index(r1, c2)),
                                static_cast<std::uint16_t>(geo.cell_index(r2, c1)),
                                static_cast<std::uint16_t>(geo.cell_index(r2, c2))};
                    }
                }
            }
        }
    }
    return std::nullopt;
}

} // namespace sudoku_potts
