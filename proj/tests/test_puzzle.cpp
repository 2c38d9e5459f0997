#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <sstream>

#include "sudoku_potts/experiment.hpp"
#include "sudoku_potts/hamiltonian.hpp"
#include "sudoku_potts/peer_table.hpp"
#include "sudoku_potts/puzzle.hpp"
#include "sudoku_potts/rng.hpp"
#include "sudoku_potts/solver.hpp"
#include "sudoku_potts/variants.hpp"
#include "support/oracles.hpp"
#include "support/stats.hpp"

using namespace sudoku_potts;
using namespace test_support;

TEST_CASE("geometry invariants and validation") {
    const Geometry g3 = make_geometry(3);
    CHECK(g3.side == 9);
    CHECK(g3.n_cells == 81);
    CHECK(g3.n_states == 9);
    CHECK(g3.peers_per_cell() == 20);
    CHECK(g3.total_peer_pairs() == 810);

    const Geometry g2 = make_geometry(2);
    CHECK(g2.side == 4);
    CHECK(g2.n_cells == 16);
    CHECK(g2.peers_per_cell() == 7);
    CHECK(g2.total_peer_pairs() == 56);

    CHECK_THROWS_AS(make_geometry(4), std::invalid_argument);
    CHECK_THROWS_AS(make_geometry(1), std::invalid_argument);
}

TEST_CASE("peer table: counts, symmetry, explicit corner set") {
    for (const int box : {2, 3}) {
        const Geometry geo = make_geometry(box);
        const PeerTable table = build_peer_table(geo);
        const int expected = box == 3 ? 20 : 7;
        for (int cell = 0; cell < geo.n_cells; ++cell) {
            const auto peers = table.peers(cell);
            CHECK(static_cast<int>(peers.size()) == expected);
            for (const auto peer : peers) {
                CHECK(peer != cell);
                const auto back = table.peers(peer);
                CHECK(std::find(back.begin(), back.end(), cell) != back.end());
            }
            CHECK(std::is_sorted(peers.begin(), peers.end()));
        }
    }

    // corner cell of the 9x9: row 0, column 0, top-left box
    const Geometry geo = make_geometry(3);
    const PeerTable table = build_peer_table(geo);
    std::set<int> expected;
    for (int c = 1; c < 9; ++c) expected.insert(c);           // row 0
    for (int r = 1; r < 9; ++r) expected.insert(r * 9);       // column 0
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            if (r != 0 || c != 0) expected.insert(r * 9 + c); // box
    const auto peers = table.peers(0);
    CHECK(std::set<int>(peers.begin(), peers.end()) == expected);
}

TEST_CASE("parse_puzzle: clues, free cells, errors") {
    const Geometry geo = make_geometry(3);

    const PuzzleSpec one_clue = parse_puzzle("1" + std::string(80, '.'), geo);
    CHECK(one_clue.clue_count() == 1);
    CHECK(one_clue.clue_values[0] == 1);
    CHECK(one_clue.free_cells.size() == 80);

    const PuzzleSpec empty = parse_puzzle(std::string(81, '.'), geo);
    CHECK(empty.clue_count() == 0);
    CHECK(empty.free_cells.size() == 81);

    CHECK_THROWS_AS(parse_puzzle(std::string(80, '.'), geo), std::invalid_argument);
    CHECK_THROWS_AS(parse_puzzle(std::string(80, '.') + "x", geo), std::invalid_argument);
    // value out of range for the 4x4 grid
    CHECK_THROWS_AS(parse_puzzle("5" + std::string(15, '.'), make_geometry(2)),
                    std::invalid_argument);

    // whitespace and '0' are accepted
    const PuzzleSpec spaced = parse_puzzle(" 1 2\n0.\t" + std::string(12, '.'),
                                           make_geometry(2));
    CHECK(spaced.clue_count() == 2);
}

TEST_CASE("parse -> serialize -> parse is the identity on random specs") {
    Rng rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        const Geometry geo = make_geometry(trial % 2 == 0 ? 3 : 2);
        std::vector<std::uint8_t> clues(geo.n_cells, 0);
        for (int cell = 0; cell < geo.n_cells; ++cell)
            if (rng.next_below(3) == 0)
                clues[cell] = static_cast<std::uint8_t>(
                    1 + rng.next_below(static_cast<std::uint32_t>(geo.n_states)));
        const PuzzleSpec spec = make_spec(geo, clues);
        const PuzzleSpec round = parse_puzzle(serialize_puzzle(spec), geo);
        CHECK(round.clue_values == spec.clue_values);
        CHECK(round.free_cells == spec.free_cells);
    }
}

TEST_CASE("collection files carry labels and skip junk lines") {
    std::istringstream in(std::string(81, '.') + " # everything free\n"
                          "\n"
                          "# just a comment\n" +
                          kSolved4x4Text + "\n");
    const auto puzzles = parse_collection(in);
    REQUIRE(puzzles.size() == 2);
    CHECK(puzzles[0].label == "everything free");
    CHECK(puzzles[0].geometry.box_size == 3);
    CHECK(puzzles[1].geometry.box_size == 2);
    CHECK(puzzles[1].clue_count() == 16);
}

TEST_CASE("count_solutions: conflicting clues, full grids, shidoku total") {
    // two equal values in one row: zero completions
    std::string conflict(81, '.');
    conflict[0] = '5';
    conflict[3] = '5';
    CHECK(count_solutions(parse_puzzle(conflict), 10) == 0);

    // a complete valid grid counts itself exactly once
    CHECK(count_solutions(parse_puzzle(kSolved9x9Text), 10) == 1);

    // empty shidoku: the backtracking count must match the independent
    // row-permutation enumeration
    const PuzzleSpec shidoku = empty_spec(make_geometry(2));
    const std::uint64_t by_rows = shidoku_count_by_row_permutations(shidoku);
    CHECK(by_rows == 288);
    CHECK(count_solutions(shidoku, 1'000'000) == by_rows);
}

TEST_CASE("count_solutions matches raw enumeration on partial shidoku specs") {
    Rng rng(512);
    for (int trial = 0; trial < 20; ++trial) {
        // blank 5 random cells of the solved 4x4, sometimes corrupt a clue
        std::string text = kSolved4x4Text;
        for (int k = 0; k < 5; ++k) text[rng.next_below(16)] = '.';
        if (trial % 3 == 0) {
            const int cell = rng.next_below(16);
            if (text[cell] != '.') text[cell] = static_cast<char>('1' + rng.next_below(4));
        }
        const PuzzleSpec spec = parse_puzzle(text);
        std::uint64_t zero_energy = 0;
        for (const auto& state : enumerate_completions(spec))
            zero_energy += (state.energy == 0);
        CHECK(count_solutions(spec, 1'000'000) == zero_energy);
    }
}

TEST_CASE("count_solutions is monotone non-increasing under clue addition") {
    const PuzzleSpec base = blank_cells(kSolved4x4Text, {0, 1, 4, 5, 10, 15});
    const std::uint64_t base_count = count_solutions(base, 1'000'000);
    const Grid reference = grid_from_text(kSolved4x4Text);
    for (const auto cell : base.free_cells) {
        for (int v = 1; v <= 4; ++v) {
            auto clues = base.clue_values;
            clues[cell] = static_cast<std::uint8_t>(v);
            const PuzzleSpec more = make_spec(base.geometry, clues);
            CHECK(count_solutions(more, 1'000'000) <= base_count);
        }
    }
    // adding the reference value keeps it solvable
    const PuzzleSpec variant = make_variant(base, reference, base.clue_count() + 2, 7);
    CHECK(count_solutions(variant, 2) >= 1);
}

TEST_CASE("solve_one: unsatisfiable, fully clued, energy of solutions") {
    std::string conflict(81, '.');
    conflict[0] = '7';
    conflict[9] = '7';  // same column
    CHECK(!solve_one(parse_puzzle(conflict)).has_value());

    const PuzzleSpec full = parse_puzzle(kSolved9x9Text);
    REQUIRE(solve_one(full).has_value());
    CHECK(*solve_one(full) == grid_from_text(kSolved9x9Text));

    const PeerTable peers = build_peer_table(make_geometry(3));
    const PuzzleSpec partial = blank_cells(kSolved9x9Text, {2, 17, 30, 44, 52, 80});
    const auto solution = solve_one(partial);
    REQUIRE(solution.has_value());
    CHECK(partial.agrees_with_clues(*solution));
    CHECK(energy(*solution, peers) == 0);
    // deterministic: same answer on a second call
    CHECK(*solve_one(partial) == *solution);
}

TEST_CASE("random_solution is a valid grid and deterministic per seed") {
    const PeerTable peers = build_peer_table(make_geometry(3));
    const Grid a = random_solution(make_geometry(3), 5);
    const Grid b = random_solution(make_geometry(3), 5);
    const Grid c = random_solution(make_geometry(3), 6);
    CHECK(a == b);
    CHECK(a != c);
    CHECK(energy(a, peers) == 0);
    CHECK(energy(c, peers) == 0);
}

TEST_CASE("make_variant: identity, full grid, additions from the reference") {
    const Grid reference = grid_from_text(kSolved9x9Text);
    const PuzzleSpec base = trim_to_unique(reference, make_geometry(3), 40, 11);
    REQUIRE(base.clue_count() == 40);

    CHECK(make_variant(base, reference, 40, 123) == base);

    const PuzzleSpec full = make_variant(base, reference, 81, 123);
    CHECK(full.clue_count() == 81);
    CHECK(full.free_cells.empty());
    CHECK(clue_grid(full) == reference);

    const PuzzleSpec more = make_variant(base, reference, 46, 77);
    CHECK(more.clue_count() == 46);
    int added = 0;
    for (int cell = 0; cell < 81; ++cell) {
        if (base.clue_values[cell] != 0)
            CHECK(more.clue_values[cell] == base.clue_values[cell]);
        else if (more.clue_values[cell] != 0) {
            CHECK(more.clue_values[cell] == reference[cell]);
            ++added;
        }
    }
    CHECK(added == 6);
    CHECK(count_solutions(more, 2) == 1);  // adding to a unique puzzle stays unique

    const PuzzleSpec fewer = make_variant(base, reference, 30, 77);
    CHECK(fewer.clue_count() == 30);
    for (int cell = 0; cell < 81; ++cell)
        if (fewer.clue_values[cell] != 0)
            CHECK(fewer.clue_values[cell] == base.clue_values[cell]);

    // a reference that is no zero-energy completion is rejected
    Grid not_solution = reference;
    not_solution[base.free_cells[0]] = not_solution[base.free_cells[0]] % 9 + 1;
    CHECK_THROWS_AS(make_variant(base, not_solution, 50, 1), std::invalid_argument);
}

TEST_CASE("make_frustrated yields an unsolvable puzzle with one extra clue") {
    const PuzzleSpec base = blank_cells(kSolved4x4Text, {0, 1, 2, 3, 6, 11});
    REQUIRE(count_solutions(base, 10) >= 1);

    const PuzzleSpec frustrated = make_frustrated(base, 31);
    CHECK(frustrated.clue_count() == base.clue_count() + 1);
    CHECK(count_solutions(frustrated, 1) == 0);

    // exhaustive minimisation: every completion has positive energy
    int min_energy = 1 << 20;
    for (const auto& state : enumerate_completions(frustrated))
        min_energy = std::min(min_energy, state.energy);
    CHECK(min_energy >= 1);
}

TEST_CASE("random_fill honors clues, reproduces per seed, uniform per cell") {
    const PuzzleSpec spec = blank_cells(kSolved9x9Text, {4, 12, 40, 41, 60});

    const Grid fill_a = random_fill(spec, 2024);
    const Grid fill_b = random_fill(spec, 2024);
    CHECK(fill_a == fill_b);
    CHECK(spec.agrees_with_clues(fill_a));

    const PuzzleSpec full = parse_puzzle(kSolved9x9Text);
    CHECK(random_fill(full, 1) == grid_from_text(kSolved9x9Text));

    // chi-squared uniformity of every free cell over many seeds
    const std::vector<double> uniform(9, 1.0 / 9.0);
    std::vector<std::vector<std::uint64_t>> counts(
        spec.free_cells.size(), std::vector<std::uint64_t>(9, 0));
    for (std::uint64_t seed = 0; seed < 10'000; ++seed) {
        const Grid grid = random_fill(spec, seed);
        for (std::size_t i = 0; i < spec.free_cells.size(); ++i)
            ++counts[i][grid[spec.free_cells[i]] - 1];
    }
    for (std::size_t i = 0; i < spec.free_cells.size(); ++i) {
        const auto result = chi_squared_test(counts[i], uniform);
        CHECK(result.p_value > 0.001);
    }
}

TEST_CASE("find_swap_rectangle yields a second solution") {
    const Geometry geo = make_geometry(3);
    const Grid solution = grid_from_text(kSolved9x9Text);
    const auto rectangle = find_swap_rectangle(solution, geo);
    REQUIRE(rectangle.has_value());

    const PeerTable peers = build_peer_table(geo);
    Grid swapped = solution;
    std::swap(swapped[(*rectangle)[0]], swapped[(*rectangle)[1]]);
    std::swap(swapped[(*rectangle)[2]], swapped[(*rectangle)[3]]);
    CHECK(swapped != solution);
    CHECK(energy(swapped, peers) == 0);

    // a puzzle whose clues avoid the rectangle has at least two solutions
    const PuzzleSpec holed = blank_cells(
        kSolved9x9Text, {static_cast<int>((*rectangle)[0]), static_cast<int>((*rectangle)[1]),
                         static_cast<int>((*rectangle)[2]), static_cast<int>((*rectangle)[3])});
    CHECK(count_solutions(holed, 10) >= 2);
}

TEST_CASE("trim_to_unique reaches the target with a unique puzzle") {
    const Grid solution = random_solution(make_geometry(3), 17);
    const PuzzleSpec trimmed = trim_to_unique(solution, make_geometry(3), 30, 5);
    CHECK(trimmed.clue_count() == 30);
    CHECK(count_solutions(trimmed, 2) == 1);
    CHECK(trimmed.agrees_with_clues(solution));
}
