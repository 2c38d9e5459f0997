#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sudoku_potts/grid.hpp"
#include "sudoku_potts/puzzle.hpp"
#include "sudoku_potts/trajectory.hpp"

namespace sudoku_potts {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct InvalidPuzzleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnbracketedTcError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// linear or log-spaced temperature grids, sorted ascending
std::vector<double> linear_temperatures(double t_min, double t_max, int n_points);
std::vector<double> log_temperatures(double t_min, double t_max, int n_points);

// the default grid: 40 log-spaced points in [0.05, 2.0] (pair-once energy
// convention; the double-sum convention doubles every temperature)
std::vector<double> default_temperature_grid();

struct ExperimentConfig {
    std::vector<double> temperatures = default_temperature_grid();

    // single-trajectory protocol (temperature sweeps)
    std::uint64_t steps = 1'000'000;  // attempted steps incl. burn-in, per point
    std::uint64_t burn_in = 200'000;
    std::uint64_t stride = 1;
    int replicas = 1;

    // replica-ensemble protocol (glass runs); --paper-scale switches to
    // 1000 x 1e6 with an 8e5 window
    int glass_replicas = 100;
    std::uint64_t replica_steps = 100'000;
    std::uint64_t stats_window = 80'000;

    // glassiness probe (low-temperature energy vs clue count)
    double probe_temperature = 0.1;
    std::uint64_t equilibration = 200'000;
    std::uint64_t probe_window = 200'000;
    int probe_replicas = 4;

    int variants_per_count = 5;
    int max_variant_tries = 4000;

    std::uint64_t seed = 1;
    int threads = 1;
    bool record_entropy = false;          // site histograms during sweeps
    std::uint64_t oracle_cap = 100'000'000;

    void apply_paper_scale() {
        glass_replicas = 1000;
        replica_steps = 1'000'000;
        stats_window = 800'000;
    }
};

struct ThermoPoint {
    double temperature = 0.0;
    double mean_energy = kNaN;
    double stderr_energy = kNaN;
    double specific_heat = kNaN;
    double stderr_cv = kNaN;
    double gs_fraction = kNaN;
    double stderr_gs = kNaN;
    double entropy_single = kNaN;        // per-site, mean over replicas
    double stderr_entropy_single = kNaN;
    double entropy_multi = kNaN;         // per-site, pooled over replicas
    double stderr_entropy_multi = kNaN;
    std::uint64_t samples = 0;
};

struct SweepResult {
    std::string puzzle_label;
    int clue_count = 0;
    std::string multiplicity;  // "0", "1" or ">=2"
    std::uint64_t seed = 0;
    std::vector<ThermoPoint> points;
};

// One trajectory (or replica pool) per configured temperature; points are
// computed independently, so temperatures parallelize freely.
SweepResult temperature_sweep(const PuzzleSpec& spec, const ExperimentConfig& config);

struct TcEstimate {
    bool bracketed = false;
    double tc = kNaN;
    double uncertainty = kNaN;
    int peak_index = -1;
    double peak_cv = kNaN;
};

// Critical temperature from the c_v peak: quadratic fit through the maximal
// sample and its two neighbours. The uncertainty combines the c_v error bars
// propagated through the vertex with a quarter-grid-spacing floor. A peak at
// either end of the grid is reported as unbracketed.
TcEstimate locate_tc(const SweepResult& sweep);

enum class ClueSweepMode { tc, low_t_energy };
enum class MultiplicityFilter { any, unique_only, multiple_only };

struct ClueSweepRow {
    int clue_count = 0;
    std::uint64_t variant_seed = 0;
    std::string multiplicity;
    // tc mode
    bool bracketed = false;
    double tc = kNaN;
    double tc_err = kNaN;
    // low_t_energy mode
    double probe_temperature = kNaN;
    double mean_energy = kNaN;
    double stderr_energy = kNaN;
    std::uint64_t samples = 0;
};

struct ClueSweepAggregate {
    int clue_count = 0;
    std::string multiplicity;
    int n_variants = 0;
    double value = kNaN;   // mean Tc or mean low-T energy over the variants
    double stderr = kNaN;  // spread of the per-variant values
};

struct ClueSweepResult {
    std::string base_label;
    ClueSweepMode mode{};
    std::vector<ClueSweepRow> rows;
    std::vector<ClueSweepAggregate> aggregates;
};

// For each requested clue count: build seeded variants of the base puzzle
// (values from the reference solution), classify their solution multiplicity,
// and measure either the c_v-peak temperature or the low-temperature mean
// energy after the configured equilibration. The filter keeps drawing seeds
// until variants_per_count variants of the wanted class are found.
ClueSweepResult clue_sweep(const PuzzleSpec& base, const Grid& reference,
                           const std::vector<int>& clue_counts, ClueSweepMode mode,
                           const ExperimentConfig& config,
                           MultiplicityFilter filter = MultiplicityFilter::any);

// Replica-annealing experiment on a certified unique puzzle: per temperature,
// glass_replicas freshly randomized replicas; ground-state fraction pooled
// over them; Shannon entropy in both averaging modes. Rejects puzzles whose
// solution count differs from one.
SweepResult glass_experiment(const PuzzleSpec& spec, const ExperimentConfig& config);

// Removes clues one at a time (seeded), keeping the solution unique after
// every removal; the workhorse for making hard unique puzzles out of a full
// solution grid. Throws if the target cannot be reached within the try budget.
PuzzleSpec trim_to_unique(const Grid& solution, const Geometry& geo, int target_clues,
                          std::uint64_t seed, int max_tries_per_level = 400);

// index of the largest value; interior (not first/last) maxima only, -1 otherwise
int interior_argmax(std::span<const double> values);

} // namespace sudoku_potts
