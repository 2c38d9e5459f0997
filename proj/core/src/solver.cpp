#include "sudoku_potts/solver.hpp"

#include <algorithm>
#include <bit>
#include <vector>

#include "sudoku_potts/peer_table.hpp"
#include "sudoku_potts/rng.hpp"

namespace sudoku_potts {

namespace {

// Backtracking search over free cells. Candidate sets are bitmasks over the
// values 1..n_states; assigning a cell strips its value from every unassigned
// peer's mask. Cell choice: fewest candidates, ties broken by lowest index,
// so the search order (and therefore solve_one's answer) is a pure function
// of the puzzle.
class Search {
public:
    Search(const PuzzleSpec& spec, std::uint64_t cap, Grid* first_solution, Rng* shuffle)
        : spec_(spec),
          peers_(build_peer_table(spec.geometry)),
          cap_(cap),
          first_solution_(first_solution),
          shuffle_(shuffle),
          assigned_(clue_grid(spec)),
          masks_(static_cast<std::size_t>(spec.geometry.n_cells),
                 static_cast<std::uint16_t>((1u << spec.geometry.n_states) - 1)) {}

    std::uint64_t run() {
        // clue consistency first: a clue pair conflict means zero completions
        for (int cell = 0; cell < spec_.geometry.n_cells; ++cell) {
            const auto v = spec_.clue_values[cell];
            if (v == 0) continue;
            for (const auto peer : peers_.peers(cell))
                if (spec_.clue_values[peer] == v) return 0;
        }
        for (int cell = 0; cell < spec_.geometry.n_cells; ++cell) {
            const auto v = spec_.clue_values[cell];
            if (v == 0) continue;
            for (const auto peer : peers_.peers(cell))
                masks_[peer] &= static_cast<std::uint16_t>(~(1u << (v - 1)));
        }
        unassigned_.assign(spec_.free_cells.begin(), spec_.free_cells.end());
        descend();
        return found_;
    }

private:
    void descend() {
        if (unassigned_.empty()) {
            if (found_ == 0 && first_solution_) *first_solution_ = assigned_;
            ++found_;
            return;
        }
        // most-constrained free cell; ties fall to the lowest index because
        // unassigned_ stays sorted
        std::size_t best = 0;
        int best_count = spec_.geometry.n_states + 1;
        for (std::size_t i = 0; i < unassigned_.size(); ++i) {
            const int count = std::popcount(masks_[unassigned_[i]]);
            if (count < best_count) {
                best_count = count;
                best = i;
                if (count <= 1) break;
            }
        }
        if (best_count == 0) return;  // dead end

        const std::uint16_t cell = unassigned_[best];
        unassigned_.erase(unassigned_.begin() + static_cast<std::ptrdiff_t>(best));
        const std::uint16_t mask = masks_[cell];

        std::uint8_t order[9];
        int n_candidates = 0;
        for (int v = 1; v <= spec_.geometry.n_states; ++v)
            if (mask & (1u << (v - 1))) order[n_candidates++] = static_cast<std::uint8_t>(v);
        if (shuffle_)
            for (int i = n_candidates - 1; i > 0; --i)
                std::swap(order[i], order[shuffle_->next_below(static_cast<std::uint32_t>(i + 1))]);

        for (int i = 0; i < n_candidates && found_ < cap_; ++i) {
            const std::uint8_t v = order[i];
            assigned_[cell] = v;
            const auto undo_mark = undo_.size();
            const std::uint16_t bit = static_cast<std::uint16_t>(1u << (v - 1));
            for (const auto peer : peers_.peers(cell)) {
                if (assigned_[peer] == 0 && (masks_[peer] & bit)) {
                    masks_[peer] &= static_cast<std::uint16_t>(~bit);
                    undo_.push_back(peer);
                }
            }
            descend();
            for (auto it = undo_.begin() + static_cast<std::ptrdiff_t>(undo_mark);
                 it != undo_.end(); ++it)
                masks_[*it] |= bit;
            undo_.resize(undo_mark);
            assigned_[cell] = 0;
        }

        const auto pos = std::lower_bound(unassigned_.begin(), unassigned_.end(), cell);
        unassigned_.insert(pos, cell);
    }

    const PuzzleSpec& spec_;
    PeerTable peers_;
    std::uint64_t cap_;
    Grid* first_solution_;
    Rng* shuffle_;

    Grid assigned_;                          // 0 = not yet assigned
    std::vector<std::uint16_t> masks_;       // candidate bitmask per cell
    std::vector<std::uint16_t> unassigned_;  // sorted free cells still open
    std::vector<std::uint16_t> undo_;
    std::uint64_t found_ = 0;
};

} // namespace

std::uint64_t count_solutions(const PuzzleSpec& spec, std::uint64_t cap) {
    if (cap == 0) throw std::invalid_argument("count_solutions cap must be >= 1");
    Search search(spec, cap, nullptr, nullptr);
    return search.run();
}

std::optional<Grid> solve_one(const PuzzleSpec& spec) {
    Grid solution;
    Search search(spec, 1, &solution, nullptr);
    if (search.run() == 0) return std::nullopt;
    return solution;
}

Grid random_solution(const Geometry& geo, std::uint64_t seed) {
    Rng rng(seed);
    Grid solution;
    const PuzzleSpec spec = empty_spec(geo);
    Search search(spec, 1, &solution, &rng);
    search.run();  // an empty grid always completes
    return solution;
}

std::string classify_multiplicity(const PuzzleSpec& spec) {
    switch (count_solutions(spec, 2)) {
        case 0: return "0";
        case 1: return "1";
        default: return ">=2";
    }
}

} // namespace sudoku_potts
