#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sudoku_potts/report.hpp"
#include "sudoku_potts/rng.hpp"
#include "sudoku_potts/runner.hpp"
#include "support/oracles.hpp"

using namespace sudoku_potts;
using namespace test_support;

namespace {

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

bool same_double(double a, double b) {
    return (std::isnan(a) && std::isnan(b)) || a == b;
}

bool same_points(const ThermoPoint& a, const ThermoPoint& b) {
    return same_double(a.temperature, b.temperature) &&
           same_double(a.mean_energy, b.mean_energy) &&
           same_double(a.stderr_energy, b.stderr_energy) &&
           same_double(a.specific_heat, b.specific_heat) &&
           same_double(a.stderr_cv, b.stderr_cv) &&
           same_double(a.gs_fraction, b.gs_fraction) &&
           same_double(a.entropy_single, b.entropy_single) &&
           same_double(a.entropy_multi, b.entropy_multi) && a.samples == b.samples;
}

std::filesystem::path fresh_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "sudoku_potts_tests" / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("double formatting round-trips exactly, including nan") {
    Rng rng(1);
    for (int trial = 0; trial < 20'000; ++trial) {
        // bit patterns spanning the full double range, skipping inf/nan
        const std::uint64_t bits = rng.next_u64();
        double value;
        static_assert(sizeof value == sizeof bits);
        std::memcpy(&value, &bits, sizeof value);
        if (!std::isfinite(value)) continue;
        CHECK(parse_double(format_double(value)) == value);
    }
    CHECK(format_double(kNaN) == "nan");
    CHECK(std::isnan(parse_double("nan")));
    CHECK(parse_double(format_double(0.1)) == 0.1);
    CHECK_THROWS_AS(parse_double("1.2.3"), std::invalid_argument);
}

TEST_CASE("sweep CSV writes the pinned schema and round-trips") {
    SweepResult sweep;
    sweep.puzzle_label = "p1";
    sweep.clue_count = 28;
    sweep.multiplicity = "1";
    sweep.seed = 42;
    Rng rng(3);
    for (int i = 0; i < 7; ++i) {
        ThermoPoint point;
        point.temperature = 0.1 * (i + 1);
        point.mean_energy = rng.next_double() * 90;
        point.stderr_energy = rng.next_double();
        point.specific_heat = rng.next_double() * 100;
        point.stderr_cv = rng.next_double();
        point.gs_fraction = i % 2 ? rng.next_double() : kNaN;
        point.entropy_single = i % 3 ? rng.next_double() : kNaN;
        point.entropy_multi = i % 3 ? rng.next_double() : kNaN;
        point.samples = 1000 + i;
        sweep.points.push_back(point);
    }
    SweepResult second = sweep;
    second.puzzle_label = "p2";
    second.multiplicity = ">=2";
    second.seed = 43;

    std::ostringstream out;
    write_sweep_csv(out, {sweep, second});
    std::istringstream in(out.str());
    CHECK(out.str().starts_with(
        "puzzle,clues,multiplicity,T,mean_H,stderr_H,cv,stderr_cv,gs_fraction,"
        "S_single,S_multi,samples,seed\n"));

    const auto read_back = read_sweep_csv(in);
    REQUIRE(read_back.size() == 2);
    for (std::size_t s = 0; s < 2; ++s) {
        const SweepResult& original = s == 0 ? sweep : second;
        CHECK(read_back[s].puzzle_label == original.puzzle_label);
        CHECK(read_back[s].clue_count == original.clue_count);
        CHECK(read_back[s].multiplicity == original.multiplicity);
        CHECK(read_back[s].seed == original.seed);
        REQUIRE(read_back[s].points.size() == original.points.size());
        for (std::size_t i = 0; i < original.points.size(); ++i)
            CHECK(same_points(read_back[s].points[i], original.points[i]));
    }
}

TEST_CASE("plot scripts reference only columns their CSVs emit") {
    const auto check_columns = [](const std::string& script, const std::string& header) {
        const auto used = used_columns_of_script(script);
        CHECK(!used.empty());
        std::vector<std::string> emitted;
        std::string field;
        for (const char c : header) {
            if (c == ',') {
                emitted.push_back(field);
                field.clear();
            } else {
                field += c;
            }
        }
        emitted.push_back(field);
        for (const auto& column : used) {
            INFO("column: ", column);
            CHECK(std::find(emitted.begin(), emitted.end(), column) != emitted.end());
        }
    };

    check_columns(plot_sweep_script(), kSweepCsvHeader);
    check_columns(plot_glass_script(), kSweepCsvHeader);

    ClueSweepResult tc_result;
    tc_result.mode = ClueSweepMode::tc;
    std::ostringstream tc_csv;
    write_clue_aggregates_csv(tc_csv, tc_result);
    check_columns(plot_tc_vs_clues_script(),
                  tc_csv.str().substr(0, tc_csv.str().find('\n')));

    ClueSweepResult lowt_result;
    lowt_result.mode = ClueSweepMode::low_t_energy;
    std::ostringstream lowt_csv;
    write_clue_aggregates_csv(lowt_csv, lowt_result);
    check_columns(plot_lowt_vs_clues_script(),
                  lowt_csv.str().substr(0, lowt_csv.str().find('\n')));
}

TEST_CASE("manifest round-trips the full plan") {
    RunPlan plan;
    plan.command = "glassiness-vs-clues";
    plan.config.temperatures = {0.1, 0.2, 0.7};
    plan.config.steps = 1234;
    plan.config.burn_in = 56;
    plan.config.seed = 987654321;
    plan.config.threads = 3;
    plan.config.record_entropy = true;
    plan.config.probe_temperature = 0.15;
    plan.puzzles = {blank_cells(kSolved9x9Text, {0, 5, 44}, "label one"),
                    parse_puzzle(kSolved4x4Text, "full 4x4")};
    plan.clue_counts = {20, 30, 40};
    plan.filter = MultiplicityFilter::multiple_only;

    const auto dir = fresh_dir("manifest");
    const auto path = (dir / "manifest.json").string();
    write_manifest(path, plan);
    const RunPlan restored = read_manifest(path);

    CHECK(restored.command == plan.command);
    CHECK(restored.config.temperatures == plan.config.temperatures);
    CHECK(restored.config.steps == plan.config.steps);
    CHECK(restored.config.burn_in == plan.config.burn_in);
    CHECK(restored.config.seed == plan.config.seed);
    CHECK(restored.config.threads == plan.config.threads);
    CHECK(restored.config.record_entropy == plan.config.record_entropy);
    CHECK(restored.config.probe_temperature == plan.config.probe_temperature);
    REQUIRE(restored.puzzles.size() == 2);
    CHECK(restored.puzzles[0] == plan.puzzles[0]);
    CHECK(restored.puzzles[1] == plan.puzzles[1]);
    CHECK(restored.clue_counts == plan.clue_counts);
    CHECK(restored.filter == plan.filter);
}

TEST_CASE("executed plans replay byte-identically, threads notwithstanding") {
    RunPlan plan;
    plan.command = "sweep";
    plan.config.temperatures = log_temperatures(0.3, 1.5, 6);
    plan.config.steps = 40'000;
    plan.config.burn_in = 10'000;
    plan.config.seed = 31337;
    plan.config.threads = 1;
    plan.puzzles = {blank_cells(kSolved9x9Text,
                                {0, 3, 6, 20, 23, 26, 60, 63, 66}, "replayed")};
    plan.out_dir = fresh_dir("run_a").string();

    const RunOutput first = execute_plan(plan);
    REQUIRE(!first.csv_files.empty());

    // replay from the manifest with a different thread count
    RunPlan replayed = read_manifest((std::filesystem::path(plan.out_dir) /
                                      first.manifest_file).string());
    replayed.out_dir = fresh_dir("run_b").string();
    replayed.config.threads = 4;
    execute_plan(replayed);

    for (const auto& name : first.csv_files) {
        const auto a = slurp(std::filesystem::path(plan.out_dir) / name);
        const auto b = slurp(std::filesystem::path(replayed.out_dir) / name);
        CHECK(a == b);
        CHECK(!a.empty());
    }
}

TEST_CASE("oracle CSV carries the exact table") {
    RunPlan plan;
    plan.command = "oracle";
    plan.config.temperatures = {0.5, 1.0};
    plan.puzzles = {blank_cells(kSolved4x4Text, {0, 1, 4, 5}, "tiny")};
    plan.out_dir = fresh_dir("oracle").string();
    execute_plan(plan);

    const auto content = slurp(std::filesystem::path(plan.out_dir) / "oracle.csv");
    CHECK(content.starts_with("puzzle,clues,multiplicity,T,mean_H,var_H,cv,S_raw,"
                              "S_per_site,min_H,ground_degeneracy,microstates\n"));
    CHECK(std::count(content.begin(), content.end(), '\n') == 3);  // header + 2 temps
}
