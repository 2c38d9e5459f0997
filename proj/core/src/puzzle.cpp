#include "sudoku_potts/puzzle.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sudoku_potts {

bool PuzzleSpec::agrees_with_clues(const Grid& grid) const {
    if (grid.size() != geometry.n_cells) return false;
    for (int cell = 0; cell < geometry.n_cells; ++cell)
        if (clue_values[cell] != 0 && grid[cell] != clue_values[cell]) return false;
    return true;
}

PuzzleSpec make_spec(const Geometry& geo, std::vector<std::uint8_t> clue_values,
                     std::string label) {
    if (static_cast<int>(clue_values.size()) != geo.n_cells)
        throw std::invalid_argument("clue array has " + std::to_string(clue_values.size()) +
                                    " entries, geometry needs " + std::to_string(geo.n_cells));
    PuzzleSpec spec;
    spec.geometry = geo;
    spec.label = std::move(label);
    spec.clue_values = std::move(clue_values);
    for (int cell = 0; cell < geo.n_cells; ++cell) {
        const int v = spec.clue_values[cell];
        if (v < 0 || v > geo.n_states)
            throw std::invalid_argument("clue value " + std::to_string(v) + " at cell " +
                                        std::to_string(cell) + " out of range 1.." +
                                        std::to_string(geo.n_states));
        if (v == 0) spec.free_cells.push_back(static_cast<std::uint16_t>(cell));
    }
    return spec;
}

PuzzleSpec empty_spec(const Geometry& geo, std::string label) {
    return make_spec(geo, std::vector<std::uint8_t>(geo.n_cells, 0), std::move(label));
}

namespace {

std::string significant_chars(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) out += c;
    return out;
}

PuzzleSpec parse_significant(const std::string& chars, const Geometry& geo,
                             std::string label) {
    if (static_cast<int>(chars.size()) != geo.n_cells)
        throw std::invalid_argument("puzzle text has " + std::to_string(chars.size()) +
                                    " significant characters, expected " +
                                    std::to_string(geo.n_cells));
    std::vector<std::uint8_t> clues(geo.n_cells, 0);
    for (int cell = 0; cell < geo.n_cells; ++cell) {
        const char c = chars[cell];
        if (c == '.' || c == '0') continue;
        if (c < '1' || c > '9')
            throw std::invalid_argument(std::string("illegal puzzle character '") + c +
                                        "' at cell " + std::to_string(cell));
        const int v = c - '0';
        if (v > geo.n_states)
            throw std::invalid_argument("clue value " + std::to_string(v) + " at cell " +
                                        std::to_string(cell) + " out of range for " +
                                        std::to_string(geo.side) + "x" +
                                        std::to_string(geo.side) + " grid");
        clues[cell] = static_cast<std::uint8_t>(v);
    }
    return make_spec(geo, std::move(clues), std::move(label));
}

} // namespace

PuzzleSpec parse_puzzle(const std::string& text, const Geometry& geo, std::string label) {
    return parse_significant(significant_chars(text), geo, std::move(label));
}

PuzzleSpec parse_puzzle(const std::string& text, std::string label) {
    const std::string chars = significant_chars(text);
    return parse_significant(chars, geometry_for_cell_count(static_cast<int>(chars.size())),
                             std::move(label));
}

std::string serialize_puzzle(const PuzzleSpec& spec) {
    std::string out;
    out.reserve(spec.geometry.n_cells);
    for (int cell = 0; cell < spec.geometry.n_cells; ++cell) {
        const int v = spec.clue_values[cell];
        out += v == 0 ? '.' : static_cast<char>('0' + v);
    }
    return out;
}

std::vector<PuzzleSpec> parse_collection(std::istream& in) {
    std::vector<PuzzleSpec> puzzles;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string label;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            label = line.substr(hash + 1);
            line.resize(hash);
            // trim the label
            const auto first = label.find_first_not_of(" \t");
            const auto last = label.find_last_not_of(" \t\r");
            label = first == std::string::npos ? std::string{}
                                               : label.substr(first, last - first + 1);
        }
        const std::string chars = significant_chars(line);
        if (chars.empty()) continue;
        try {
            puzzles.push_back(parse_puzzle(chars, std::move(label)));
        } catch (const std::invalid_argument& err) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": " + err.what());
        }
    }
    return puzzles;
}

std::vector<PuzzleSpec> load_collection(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open puzzle file: " + path);
    return parse_collection(in);
}

Grid clue_grid(const PuzzleSpec& spec, std::uint8_t fill) {
    Grid grid{std::vector<std::uint8_t>(spec.geometry.n_cells, fill)};
    for (int cell = 0; cell < spec.geometry.n_cells; ++cell)
        if (spec.clue_values[cell] != 0) grid[cell] = spec.clue_values[cell];
    return grid;
}

} // namespace sudoku_potts
