#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sudoku_potts/exact.hpp"
#include "sudoku_potts/experiment.hpp"

namespace sudoku_potts {

// shortest decimal form that parses back to the same double ("nan" for
// missing values); the backbone of the bit-identical replay contract
std::string format_double(double value);
double parse_double(const std::string& text);

// sweep/glass table, one row per (puzzle, temperature)
inline constexpr const char* kSweepCsvHeader =
    "puzzle,clues,multiplicity,T,mean_H,stderr_H,cv,stderr_cv,gs_fraction,"
    "S_single,S_multi,samples,seed";

void write_sweep_csv(std::ostream& out, const std::vector<SweepResult>& sweeps);
std::vector<SweepResult> read_sweep_csv(std::istream& in);

void write_tc_csv(std::ostream& out, const std::vector<SweepResult>& sweeps,
                  const std::vector<TcEstimate>& estimates);

void write_clue_variants_csv(std::ostream& out, const ClueSweepResult& result);
void write_clue_aggregates_csv(std::ostream& out, const ClueSweepResult& result);

void write_oracle_csv(std::ostream& out, const PuzzleSpec& spec, const ExactTable& table);

// python plot scripts working purely off the emitted CSV columns; each
// declares USED_COLUMNS so consumers (and the lint test) can check the
// column contract without running matplotlib
std::string plot_sweep_script();
std::string plot_tc_vs_clues_script();
std::string plot_lowt_vs_clues_script();
std::string plot_glass_script();

// columns named in a generated script's USED_COLUMNS line
std::vector<std::string> used_columns_of_script(const std::string& script);

} // namespace sudoku_potts
