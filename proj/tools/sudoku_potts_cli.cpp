// Command-line front end: experiment subcommands write CSV + manifest + plot
// scripts into --out; puzzle utilities (solve/count/variant) print to stdout.
//
// Exit codes: 0 success, 2 invalid puzzle, 3 unbracketed Tc, 4 oracle cap
// exceeded, 1 anything else.

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sudoku_potts/exact.hpp"
#include "sudoku_potts/experiment.hpp"
#include "sudoku_potts/hamiltonian.hpp"
#include "sudoku_potts/report.hpp"
#include "sudoku_potts/runner.hpp"
#include "sudoku_potts/solver.hpp"
#include "sudoku_potts/variants.hpp"
#include "sudoku_potts/version.hpp"

namespace sp = sudoku_potts;

namespace {

std::vector<sp::PuzzleSpec> load_puzzles(const std::string& source) {
    try {
        if (std::filesystem::exists(source)) {
            auto puzzles = sp::load_collection(source);
            if (puzzles.empty())
                throw sp::InvalidPuzzleError("no puzzles in file: " + source);
            return puzzles;
        }
        return {sp::parse_puzzle(source, "inline")};
    } catch (const sp::InvalidPuzzleError&) {
        throw;
    } catch (const std::exception& err) {
        throw sp::InvalidPuzzleError(err.what());
    }
}

struct GridFlags {
    double t_min = 0.05;
    double t_max = 2.0;
    int t_points = 40;
    bool linear = false;
    std::vector<double> t_list;

    std::vector<double> resolve() const {
        if (!t_list.empty()) {
            auto sorted = t_list;
            std::sort(sorted.begin(), sorted.end());
            return sorted;
        }
        return linear ? sp::linear_temperatures(t_min, t_max, t_points)
                      : sp::log_temperatures(t_min, t_max, t_points);
    }
};

void add_grid_flags(CLI::App* cmd, GridFlags& grid) {
    cmd->add_option("--tmin", grid.t_min, "lowest temperature");
    cmd->add_option("--tmax", grid.t_max, "highest temperature");
    cmd->add_option("--tpoints", grid.t_points, "number of grid points");
    cmd->add_flag("--linear", grid.linear, "linear instead of log spacing");
    cmd->add_option("--tlist", grid.t_list, "explicit temperature list");
}

int dispatch(const sp::RunPlan& plan) {
    const sp::RunOutput output = sp::execute_plan(plan);
    std::cout << "wrote";
    for (const auto& file : output.csv_files) std::cout << ' ' << file;
    std::cout << " and " << output.manifest_file << " in "
              << (plan.out_dir.empty() ? "." : plan.out_dir) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo thermodynamics of the sudoku Hamiltonian"};
    app.set_version_flag("--version", std::string(sp::kVersion));
    app.require_subcommand(1);

    std::string puzzle_source, out_dir = "out";
    sp::ExperimentConfig config;
    GridFlags grid;
    bool paper_scale = false;

    auto add_common = [&](CLI::App* cmd, bool needs_out = true) {
        cmd->add_option("--puzzle", puzzle_source, "puzzle file or inline cell string")
            ->required();
        cmd->add_option("--seed", config.seed, "master RNG seed");
        cmd->add_option("--threads", config.threads, "worker threads");
        if (needs_out) cmd->add_option("--out", out_dir, "output directory");
    };

    // sweep (heat-capacity curve per puzzle)
    auto* sweep = app.add_subcommand("sweep", "mean energy and specific heat vs temperature");
    add_common(sweep);
    add_grid_flags(sweep, grid);
    sweep->add_option("--steps", config.steps, "attempted steps per point (incl. burn-in)");
    sweep->add_option("--burnin", config.burn_in, "unrecorded steps per point");
    sweep->add_option("--stride", config.stride, "record every n-th step");
    sweep->add_option("--replicas", config.replicas, "independent trajectories per point");
    sweep->add_flag("--entropy", config.record_entropy,
                    "record site histograms and entropy columns (stride 1)");

    // tc-vs-clues
    std::vector<int> clue_counts;
    std::string filter_name = "any";
    auto* tc_cmd = app.add_subcommand("tc-vs-clues",
                                      "critical temperature across clue-count variants");
    add_common(tc_cmd);
    add_grid_flags(tc_cmd, grid);
    tc_cmd->add_option("--clue-counts", clue_counts, "clue counts to scan")->required();
    tc_cmd->add_option("--variants-per-count", config.variants_per_count,
                       "variants kept per count");
    tc_cmd->add_option("--filter", filter_name,
                       "multiplicity filter: any | unique | multiple");
    tc_cmd->add_option("--steps", config.steps, "attempted steps per point");
    tc_cmd->add_option("--burnin", config.burn_in, "unrecorded steps per point");
    tc_cmd->add_option("--stride", config.stride, "record every n-th step");

    // glassiness-vs-clues
    auto* lowt_cmd = app.add_subcommand(
        "glassiness-vs-clues", "low-temperature mean energy across clue-count variants");
    add_common(lowt_cmd);
    lowt_cmd->add_option("--clue-counts", clue_counts, "clue counts to scan")->required();
    lowt_cmd->add_option("--variants-per-count", config.variants_per_count,
                         "variants kept per count");
    lowt_cmd->add_option("--filter", filter_name,
                         "multiplicity filter: any | unique | multiple");
    lowt_cmd->add_option("--probe-t", config.probe_temperature, "probe temperature");
    lowt_cmd->add_option("--equilibration", config.equilibration,
                         "equilibration steps before measuring");
    lowt_cmd->add_option("--probe-window", config.probe_window, "measured steps");
    lowt_cmd->add_option("--probe-replicas", config.probe_replicas,
                         "independent runs per variant");

    // glass (replica annealing + entropy)
    auto* glass = app.add_subcommand(
        "glass", "ground-state fraction and both-mode entropy vs temperature");
    add_common(glass);
    add_grid_flags(glass, grid);
    glass->add_option("--replicas", config.glass_replicas, "replicas per temperature");
    glass->add_option("--steps", config.replica_steps, "attempted steps per replica");
    glass->add_option("--window", config.stats_window,
                      "final steps with statistics gathered");
    glass->add_flag("--paper-scale", paper_scale,
                    "1000 replicas x 1e6 steps, 8e5 window");

    // oracle (exact enumeration)
    auto* oracle = app.add_subcommand("oracle",
                                      "exact Boltzmann averages by full enumeration");
    add_common(oracle);
    add_grid_flags(oracle, grid);
    oracle->add_option("--cap", config.oracle_cap, "largest allowed state count");

    // puzzle utilities
    auto* solve = app.add_subcommand("solve", "print the first solution");
    add_common(solve, false);

    std::uint64_t count_cap = 1'000'000;
    auto* count = app.add_subcommand("count", "count solutions up to a cap");
    add_common(count, false);
    count->add_option("--cap", count_cap, "stop counting at this many");

    int variant_target = -1;
    bool frustrate = false;
    auto* variant = app.add_subcommand("variant", "derive an over/under-constrained puzzle");
    add_common(variant, false);
    auto* target_opt =
        variant->add_option("--target", variant_target, "clue count of the variant");
    variant->add_flag("--frustrate", frustrate,
                      "add one clue that makes the puzzle unsolvable");
    target_opt->excludes("--frustrate");

    // replay a manifest
    std::string manifest_path;
    auto* replay = app.add_subcommand("replay", "re-run an experiment from its manifest");
    replay->add_option("manifest", manifest_path, "path to manifest.json")->required();
    replay->add_option("--out", out_dir, "output directory");
    replay->add_option("--threads", config.threads, "worker threads");

    CLI11_PARSE(app, argc, argv);

    try {
        if (replay->parsed()) {
            sp::RunPlan plan = sp::read_manifest(manifest_path);
            plan.out_dir = out_dir;
            if (replay->count("--threads") > 0) plan.config.threads = config.threads;
            return dispatch(plan);
        }

        auto puzzles = load_puzzles(puzzle_source);

        if (solve->parsed()) {
            const auto solution = sp::solve_one(puzzles.front());
            if (!solution) {
                std::cout << "unsatisfiable\n";
                return 2;
            }
            std::cout << sp::to_text(*solution, puzzles.front().geometry);
            return 0;
        }
        if (count->parsed()) {
            const auto n = sp::count_solutions(puzzles.front(), count_cap);
            std::cout << n << (n == count_cap ? " (cap reached)" : "") << "\n";
            return 0;
        }
        if (variant->parsed()) {
            const sp::PuzzleSpec& base = puzzles.front();
            sp::PuzzleSpec derived = base;
            if (frustrate) {
                derived = sp::make_frustrated(base, config.seed);
            } else if (variant_target >= 0) {
                const auto reference = sp::solve_one(base);
                if (!reference)
                    throw sp::InvalidPuzzleError("puzzle is unsatisfiable, no variants");
                derived = sp::make_variant(base, *reference, variant_target, config.seed);
            } else {
                throw CLI::ValidationError("variant", "need --target or --frustrate");
            }
            std::cout << sp::serialize_puzzle(derived);
            if (!derived.label.empty()) std::cout << " # " << derived.label;
            std::cout << "\n";
            return 0;
        }

        sp::RunPlan plan;
        plan.config = config;
        plan.config.temperatures = grid.resolve();
        plan.puzzles = std::move(puzzles);
        plan.out_dir = out_dir;
        plan.clue_counts = clue_counts;
        if (filter_name == "unique") plan.filter = sp::MultiplicityFilter::unique_only;
        else if (filter_name == "multiple") plan.filter = sp::MultiplicityFilter::multiple_only;
        else if (filter_name == "any") plan.filter = sp::MultiplicityFilter::any;
        else throw CLI::ValidationError("--filter", "must be any, unique or multiple");
        if (paper_scale) plan.config.apply_paper_scale();

        if (sweep->parsed()) plan.command = "sweep";
        else if (tc_cmd->parsed()) plan.command = "tc-vs-clues";
        else if (lowt_cmd->parsed()) plan.command = "glassiness-vs-clues";
        else if (glass->parsed()) plan.command = "glass";
        else if (oracle->parsed()) plan.command = "oracle";
        return dispatch(plan);
    } catch (const sp::InvalidPuzzleError& err) {
        std::cerr << "invalid puzzle: " << err.what() << "\n";
        return 2;
    } catch (const sp::UnbracketedTcError& err) {
        std::cerr << "unbracketed Tc: " << err.what() << "\n";
        return 3;
    } catch (const sp::StateSpaceCapExceeded& err) {
        std::cerr << "oracle cap exceeded: " << err.what() << "\n";
        return 4;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
}
