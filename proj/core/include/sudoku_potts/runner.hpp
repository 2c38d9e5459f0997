#pragma once

#include <string>
#include <vector>

#include "sudoku_potts/experiment.hpp"
#include "sudoku_potts/puzzle.hpp"

namespace sudoku_potts {

// Everything needed to execute (or bit-identically replay) one experiment.
// The manifest written next to each run's CSVs is a JSON serialization of
// this plan plus the tool version and the measurement conventions.
struct RunPlan {
    std::string command;  // sweep | tc-vs-clues | glassiness-vs-clues | glass | oracle
    ExperimentConfig config;
    std::vector<PuzzleSpec> puzzles;

    // clue-sweep extras
    std::vector<int> clue_counts;
    MultiplicityFilter filter = MultiplicityFilter::any;

    std::string out_dir;
};

struct RunOutput {
    std::vector<std::string> csv_files;  // paths written, relative to out_dir
    std::string manifest_file;
};

// Runs the planned experiment and writes its CSVs, the manifest and the plot
// scripts into plan.out_dir. Pure function of the plan: a replayed manifest
// yields byte-identical CSV files regardless of thread count.
RunOutput execute_plan(const RunPlan& plan);

void write_manifest(const std::string& path, const RunPlan& plan);
RunPlan read_manifest(const std::string& path);

} // namespace sudoku_potts
