#include "sudoku_potts/runner.hpp"

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "sudoku_potts/report.hpp"
#include "sudoku_potts/solver.hpp"
#include "sudoku_potts/version.hpp"

namespace sudoku_potts {

namespace {

using nlohmann::json;

json config_to_json(const ExperimentConfig& config) {
    return json{{"temperatures", config.temperatures},
                {"steps", config.steps},
                {"burn_in", config.burn_in},
                {"stride", config.stride},
                {"replicas", config.replicas},
                {"glass_replicas", config.glass_replicas},
                {"replica_steps", config.replica_steps},
                {"stats_window", config.stats_window},
                {"probe_temperature", config.probe_temperature},
                {"equilibration", config.equilibration},
                {"probe_window", config.probe_window},
                {"probe_replicas", config.probe_replicas},
                {"variants_per_count", config.variants_per_count},
                {"max_variant_tries", config.max_variant_tries},
                {"seed", config.seed},
                {"threads", config.threads},
                {"record_entropy", config.record_entropy},
                {"oracle_cap", config.oracle_cap}};
}

ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig config;
    config.temperatures = j.at("temperatures").get<std::vector<double>>();
    config.steps = j.at("steps").get<std::uint64_t>();
    config.burn_in = j.at("burn_in").get<std::uint64_t>();
    config.stride = j.at("stride").get<std::uint64_t>();
    config.replicas = j.at("replicas").get<int>();
    config.glass_replicas = j.at("glass_replicas").get<int>();
    config.replica_steps = j.at("replica_steps").get<std::uint64_t>();
    config.stats_window = j.at("stats_window").get<std::uint64_t>();
    config.probe_temperature = j.at("probe_temperature").get<double>();
    config.equilibration = j.at("equilibration").get<std::uint64_t>();
    config.probe_window = j.at("probe_window").get<std::uint64_t>();
    config.probe_replicas = j.at("probe_replicas").get<int>();
    config.variants_per_count = j.at("variants_per_count").get<int>();
    config.max_variant_tries = j.at("max_variant_tries").get<int>();
    config.seed = j.at("seed").get<std::uint64_t>();
    config.threads = j.at("threads").get<int>();
    config.record_entropy = j.at("record_entropy").get<bool>();
    config.oracle_cap = j.at("oracle_cap").get<std::uint64_t>();
    return config;
}

const char* filter_name(MultiplicityFilter filter) {
    switch (filter) {
        case MultiplicityFilter::any: return "any";
        case MultiplicityFilter::unique_only: return "unique";
        case MultiplicityFilter::multiple_only: return "multiple";
    }
    return "any";
}

MultiplicityFilter filter_from_name(const std::string& name) {
    if (name == "any") return MultiplicityFilter::any;
    if (name == "unique") return MultiplicityFilter::unique_only;
    if (name == "multiple") return MultiplicityFilter::multiple_only;
    throw std::invalid_argument("unknown multiplicity filter: " + name);
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

template <typename WriteFn>
void write_csv_file(const std::filesystem::path& path, WriteFn&& writer) {
    std::ostringstream buffer;
    writer(buffer);
    write_file(path, buffer.str());
}

} // namespace

void write_manifest(const std::string& path, const RunPlan& plan) {
    json puzzles = json::array();
    for (const PuzzleSpec& spec : plan.puzzles)
        puzzles.push_back({{"text", serialize_puzzle(spec)}, {"label", spec.label}});

    const json manifest{
        {"tool", "sudoku-potts"},
        {"version", std::string(kVersion)},
        {"command", plan.command},
        {"conventions",
         {{"energy", "unordered conflicting peer pairs, each counted once (the "
                     "double-sum Hamiltonian equals twice this value; its "
                     "temperature axis is twice ours)"},
          {"step", "one attempted single-cell change"},
          {"proposal", "uniform over the values different from the current one"},
          {"acceptance", "min(1, exp(-dH/T)); at T=0 accept dH <= 0"},
          {"entropy", "natural logarithm; per-site values divide by all cells"},
          {"rng", "xoshiro256++ seeded via splitmix64; stream k of seed s uses "
                  "derive_stream_seed(s, k) = splitmix64(s + (k+1)*0x9e3779b97f4a7c15)"},
          {"error_bars", "batch means (20 batches) for single trajectories, "
                         "replica spread otherwise"}}},
        {"puzzles", puzzles},
        {"config", config_to_json(plan.config)},
        {"clue_counts", plan.clue_counts},
        {"filter", filter_name(plan.filter)},
    };
    write_file(path, manifest.dump(2) + "\n");
}

RunPlan read_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open manifest: " + path);
    json manifest;
    in >> manifest;

    RunPlan plan;
    plan.command = manifest.at("command").get<std::string>();
    plan.config = config_from_json(manifest.at("config"));
    for (const auto& entry : manifest.at("puzzles"))
        plan.puzzles.push_back(parse_puzzle(entry.at("text").get<std::string>(),
                                            entry.at("label").get<std::string>()));
    plan.clue_counts = manifest.at("clue_counts").get<std::vector<int>>();
    plan.filter = filter_from_name(manifest.at("filter").get<std::string>());
    return plan;
}

RunOutput execute_plan(const RunPlan& plan) {
    if (plan.puzzles.empty()) throw InvalidPuzzleError("no puzzle supplied");
    const std::filesystem::path out_dir(plan.out_dir.empty() ? "." : plan.out_dir);
    std::filesystem::create_directories(out_dir);

    RunOutput output;
    auto emit = [&](const std::string& name, auto&& writer) {
        write_csv_file(out_dir / name, writer);
        output.csv_files.push_back(name);
    };

    if (plan.command == "sweep") {
        std::vector<SweepResult> sweeps;
        std::vector<TcEstimate> estimates;
        for (const PuzzleSpec& spec : plan.puzzles) {
            sweeps.push_back(temperature_sweep(spec, plan.config));
            estimates.push_back(sweeps.back().points.size() >= 5 ? locate_tc(sweeps.back())
                                                                 : TcEstimate{});
        }
        emit("sweep.csv", [&](std::ostream& os) { write_sweep_csv(os, sweeps); });
        emit("tc.csv", [&](std::ostream& os) { write_tc_csv(os, sweeps, estimates); });
        write_file(out_dir / "plot_sweep.py", plot_sweep_script());
    } else if (plan.command == "tc-vs-clues" || plan.command == "glassiness-vs-clues") {
        const PuzzleSpec& base = plan.puzzles.front();
        const auto reference = solve_one(base);
        if (!reference)
            throw InvalidPuzzleError("base puzzle is unsatisfiable; variants need a "
                                     "reference solution");
        const ClueSweepMode mode = plan.command == "tc-vs-clues"
                                       ? ClueSweepMode::tc
                                       : ClueSweepMode::low_t_energy;
        const ClueSweepResult result =
            clue_sweep(base, *reference, plan.clue_counts, mode, plan.config, plan.filter);
        if (mode == ClueSweepMode::tc) {
            bool any_bracketed = false;
            for (const ClueSweepRow& row : result.rows) any_bracketed |= row.bracketed;
            if (!any_bracketed)
                throw UnbracketedTcError("no variant produced a bracketed c_v peak");
            emit("tc_variants.csv",
                 [&](std::ostream& os) { write_clue_variants_csv(os, result); });
            emit("tc_by_count.csv",
                 [&](std::ostream& os) { write_clue_aggregates_csv(os, result); });
            write_file(out_dir / "plot_tc_vs_clues.py", plot_tc_vs_clues_script());
        } else {
            emit("lowt_variants.csv",
                 [&](std::ostream& os) { write_clue_variants_csv(os, result); });
            emit("lowt_by_count.csv",
                 [&](std::ostream& os) { write_clue_aggregates_csv(os, result); });
            write_file(out_dir / "plot_lowt_vs_clues.py", plot_lowt_vs_clues_script());
        }
    } else if (plan.command == "glass") {
        std::vector<SweepResult> sweeps;
        for (const PuzzleSpec& spec : plan.puzzles)
            sweeps.push_back(glass_experiment(spec, plan.config));
        emit("glass.csv", [&](std::ostream& os) { write_sweep_csv(os, sweeps); });
        write_file(out_dir / "plot_glass.py", plot_glass_script());
    } else if (plan.command == "oracle") {
        emit("oracle.csv", [&](std::ostream& os) {
            for (const PuzzleSpec& spec : plan.puzzles) {
                const ExactTable table =
                    exact_reference(spec, plan.config.temperatures, plan.config.oracle_cap);
                write_oracle_csv(os, spec, table);
                break;  // header written once; oracle runs one puzzle
            }
        });
    } else {
        throw std::invalid_argument("unknown experiment command: " + plan.command);
    }

    const auto manifest_path = out_dir / "manifest.json";
    write_manifest(manifest_path.string(), plan);
    output.manifest_file = "manifest.json";
    return output;
}

} // namespace sudoku_potts
