#include "sudoku_potts/report.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace sudoku_potts {

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    char buf[40];
    const auto result = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, result.ptr);
}

double parse_double(const std::string& text) {
    if (text == "nan" || text.empty()) return kNaN;
    double value = 0.0;
    const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
    if (result.ec != std::errc{} || result.ptr != text.data() + text.size())
        throw std::invalid_argument("bad numeric field: '" + text + "'");
    return value;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (const char c : line) {
        if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

std::uint64_t parse_u64(const std::string& text) {
    std::uint64_t value = 0;
    const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
    if (result.ec != std::errc{} || result.ptr != text.data() + text.size())
        throw std::invalid_argument("bad integer field: '" + text + "'");
    return value;
}

} // namespace

void write_sweep_csv(std::ostream& out, const std::vector<SweepResult>& sweeps) {
    out << kSweepCsvHeader << '\n';
    for (const SweepResult& sweep : sweeps) {
        for (const ThermoPoint& point : sweep.points) {
            out << sweep.puzzle_label << ',' << sweep.clue_count << ','
                << sweep.multiplicity << ',' << format_double(point.temperature) << ','
                << format_double(point.mean_energy) << ','
                << format_double(point.stderr_energy) << ','
                << format_double(point.specific_heat) << ','
                << format_double(point.stderr_cv) << ','
                << format_double(point.gs_fraction) << ','
                << format_double(point.entropy_single) << ','
                << format_double(point.entropy_multi) << ',' << point.samples << ','
                << sweep.seed << '\n';
        }
    }
}

std::vector<SweepResult> read_sweep_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty CSV");
    if (line.ends_with('\r')) line.pop_back();
    if (line != kSweepCsvHeader)
        throw std::invalid_argument("unexpected sweep CSV header: " + line);

    std::vector<SweepResult> sweeps;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 13)
            throw std::invalid_argument("sweep CSV row has " +
                                        std::to_string(fields.size()) + " fields");
        const std::string& label = fields[0];
        const int clues = static_cast<int>(parse_u64(fields[1]));
        const std::string& multiplicity = fields[2];
        const std::uint64_t seed = parse_u64(fields[12]);
        if (sweeps.empty() || sweeps.back().puzzle_label != label ||
            sweeps.back().clue_count != clues || sweeps.back().seed != seed ||
            sweeps.back().multiplicity != multiplicity) {
            SweepResult next;
            next.puzzle_label = label;
            next.clue_count = clues;
            next.multiplicity = multiplicity;
            next.seed = seed;
            sweeps.push_back(std::move(next));
        }
        ThermoPoint point;
        point.temperature = parse_double(fields[3]);
        point.mean_energy = parse_double(fields[4]);
        point.stderr_energy = parse_double(fields[5]);
        point.specific_heat = parse_double(fields[6]);
        point.stderr_cv = parse_double(fields[7]);
        point.gs_fraction = parse_double(fields[8]);
        point.entropy_single = parse_double(fields[9]);
        point.entropy_multi = parse_double(fields[10]);
        point.samples = parse_u64(fields[11]);
        sweeps.back().points.push_back(point);
    }
    return sweeps;
}

void write_tc_csv(std::ostream& out, const std::vector<SweepResult>& sweeps,
                  const std::vector<TcEstimate>& estimates) {
    out << "puzzle,clues,multiplicity,seed,tc,tc_err,peak_cv,bracketed\n";
    for (std::size_t i = 0; i < sweeps.size(); ++i) {
        const SweepResult& sweep = sweeps[i];
        const TcEstimate& estimate = estimates[i];
        out << sweep.puzzle_label << ',' << sweep.clue_count << ',' << sweep.multiplicity
            << ',' << sweep.seed << ',' << format_double(estimate.tc) << ','
            << format_double(estimate.uncertainty) << ',' << format_double(estimate.peak_cv)
            << ',' << (estimate.bracketed ? 1 : 0) << '\n';
    }
}

void write_clue_variants_csv(std::ostream& out, const ClueSweepResult& result) {
    if (result.mode == ClueSweepMode::tc) {
        out << "base,clues,multiplicity,variant_seed,tc,tc_err,bracketed\n";
        for (const ClueSweepRow& row : result.rows)
            out << result.base_label << ',' << row.clue_count << ',' << row.multiplicity
                << ',' << row.variant_seed << ',' << format_double(row.tc) << ','
                << format_double(row.tc_err) << ',' << (row.bracketed ? 1 : 0) << '\n';
    } else {
        out << "base,clues,multiplicity,variant_seed,T_probe,mean_H,stderr_H,samples\n";
        for (const ClueSweepRow& row : result.rows)
            out << result.base_label << ',' << row.clue_count << ',' << row.multiplicity
                << ',' << row.variant_seed << ',' << format_double(row.probe_temperature)
                << ',' << format_double(row.mean_energy) << ','
                << format_double(row.stderr_energy) << ',' << row.samples << '\n';
    }
}

void write_clue_aggregates_csv(std::ostream& out, const ClueSweepResult& result) {
    const char* value_name = result.mode == ClueSweepMode::tc ? "tc_mean" : "mean_H";
    const char* err_name = result.mode == ClueSweepMode::tc ? "tc_stderr" : "stderr_H";
    out << "base,clues,multiplicity,n_variants," << value_name << ',' << err_name << '\n';
    for (const ClueSweepAggregate& aggregate : result.aggregates)
        out << result.base_label << ',' << aggregate.clue_count << ','
            << aggregate.multiplicity << ',' << aggregate.n_variants << ','
            << format_double(aggregate.value) << ',' << format_double(aggregate.stderr)
            << '\n';
}

void write_oracle_csv(std::ostream& out, const PuzzleSpec& spec, const ExactTable& table) {
    out << "puzzle,clues,multiplicity,T,mean_H,var_H,cv,S_raw,S_per_site,min_H,"
           "ground_degeneracy,microstates\n";
    const std::string multiplicity =
        table.min_energy > 0 ? "0" : (table.ground_degeneracy == 1 ? "1" : ">=2");
    for (const ExactPoint& point : table.points) {
        out << spec.label << ',' << spec.clue_count() << ',' << multiplicity << ','
            << format_double(point.temperature) << ',' << format_double(point.mean_energy)
            << ',' << format_double(point.var_energy) << ','
            << format_double(point.specific_heat) << ','
            << format_double(point.entropy.raw) << ','
            << format_double(point.entropy.per_site) << ',' << table.min_energy << ','
            << table.ground_degeneracy << ',' << table.n_microstates << '\n';
    }
}

namespace {

// shared scaffolding: stdlib csv reader keyed by column name
constexpr const char* kPyPreamble = R"py(#!/usr/bin/env python3
import csv
import sys
from collections import defaultdict

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt


def load(path, columns):
    rows = []
    with open(path, newline="") as f:
        for row in csv.DictReader(f):
            rows.append({c: row[c] for c in columns})
    return rows


def num(x):
    return float(x)
)py";

} // namespace

std::string plot_sweep_script() {
    std::string script = kPyPreamble;
    script += R"py(
USED_COLUMNS = ["puzzle", "clues", "T", "mean_H", "stderr_H", "cv", "stderr_cv"]

rows = load(sys.argv[1] if len(sys.argv) > 1 else "sweep.csv", USED_COLUMNS)
by_puzzle = defaultdict(list)
for r in rows:
    by_puzzle[(r["puzzle"], r["clues"])].append(r)

fig, (ax_e, ax_cv) = plt.subplots(1, 2, figsize=(11, 4.5))
for (puzzle, clues), series in sorted(by_puzzle.items()):
    t = [num(r["T"]) for r in series]
    label = f"{puzzle} ({clues})"
    ax_e.errorbar(t, [num(r["mean_H"]) for r in series],
                  yerr=[num(r["stderr_H"]) for r in series], fmt="o-", ms=3, label=label)
    ax_cv.errorbar(t, [num(r["cv"]) for r in series],
                   yerr=[num(r["stderr_cv"]) for r in series], fmt="o-", ms=3, label=label)
for ax, ylabel in ((ax_e, "mean energy"), (ax_cv, "specific heat")):
    ax.set_xscale("log")
    ax.set_xlabel("T")
    ax.set_ylabel(ylabel)
    ax.legend(fontsize=8)
fig.tight_layout()
fig.savefig("sweep.png", dpi=160)
print("wrote sweep.png")
)py";
    return script;
}

std::string plot_tc_vs_clues_script() {
    std::string script = kPyPreamble;
    script += R"py(
USED_COLUMNS = ["clues", "multiplicity", "tc_mean", "tc_stderr"]

rows = load(sys.argv[1] if len(sys.argv) > 1 else "tc_by_count.csv", USED_COLUMNS)
fig, ax = plt.subplots(figsize=(6, 4.5))
for cls, marker in (("1", "o"), (">=2", "s"), ("0", "x")):
    series = [r for r in rows if r["multiplicity"] == cls]
    if not series:
        continue
    series.sort(key=lambda r: int(r["clues"]))
    ax.errorbar([int(r["clues"]) for r in series],
                [num(r["tc_mean"]) for r in series],
                yerr=[num(r["tc_stderr"]) for r in series],
                fmt=marker + "-", label=f"multiplicity {cls}")
ax.set_xlabel("number of clues")
ax.set_ylabel("critical temperature")
ax.legend()
fig.tight_layout()
fig.savefig("tc_vs_clues.png", dpi=160)
print("wrote tc_vs_clues.png")
)py";
    return script;
}

std::string plot_lowt_vs_clues_script() {
    std::string script = kPyPreamble;
    script += R"py(
USED_COLUMNS = ["clues", "multiplicity", "mean_H", "stderr_H"]

rows = load(sys.argv[1] if len(sys.argv) > 1 else "lowt_by_count.csv", USED_COLUMNS)
fig, ax = plt.subplots(figsize=(6, 4.5))
for cls, marker in (("1", "o"), (">=2", "s")):
    series = [r for r in rows if r["multiplicity"] == cls]
    if not series:
        continue
    series.sort(key=lambda r: int(r["clues"]))
    ax.errorbar([int(r["clues"]) for r in series],
                [num(r["mean_H"]) for r in series],
                yerr=[num(r["stderr_H"]) for r in series],
                fmt=marker + "-", label=f"multiplicity {cls}")
ax.set_xlabel("number of clues")
ax.set_ylabel("low-T mean energy")
ax.legend()
fig.tight_layout()
fig.savefig("lowt_vs_clues.png", dpi=160)
print("wrote lowt_vs_clues.png")
)py";
    return script;
}

std::string plot_glass_script() {
    std::string script = kPyPreamble;
    script += R"py(
USED_COLUMNS = ["puzzle", "clues", "T", "gs_fraction", "S_single", "S_multi"]

rows = load(sys.argv[1] if len(sys.argv) > 1 else "glass.csv", USED_COLUMNS)
by_puzzle = defaultdict(list)
for r in rows:
    by_puzzle[(r["puzzle"], r["clues"])].append(r)

fig, ax = plt.subplots(figsize=(6.5, 5))
inset = ax.inset_axes([0.55, 0.55, 0.42, 0.4])
for (puzzle, clues), series in sorted(by_puzzle.items()):
    t = [num(r["T"]) for r in series]
    label = f"{puzzle} ({clues})"
    ax.plot(t, [num(r["gs_fraction"]) for r in series], "o-", ms=3, label=label)
    inset.plot(t, [num(r["S_multi"]) for r in series], "-", lw=1)
    inset.plot(t, [num(r["S_single"]) for r in series], "--", lw=1)
ax.set_xscale("log")
ax.set_xlabel("T")
ax.set_ylabel("ground-state fraction")
ax.legend(fontsize=8, loc="upper left")
inset.set_xscale("log")
inset.set_xlabel("T", fontsize=8)
inset.set_ylabel("S per site", fontsize=8)
inset.tick_params(labelsize=7)
fig.tight_layout()
fig.savefig("glass.png", dpi=160)
print("wrote glass.png")
)py";
    return script;
}

std::vector<std::string> used_columns_of_script(const std::string& script) {
    const auto start = script.find("USED_COLUMNS = [");
    if (start == std::string::npos)
        throw std::invalid_argument("script declares no USED_COLUMNS");
    const auto open = script.find('[', start);
    const auto close = script.find(']', open);
    std::vector<std::string> columns;
    std::string current;
    bool in_string = false;
    for (auto i = open; i < close; ++i) {
        const char c = script[i];
        if (c == '"') {
            if (in_string) columns.push_back(current);
            current.clear();
            in_string = !in_string;
        } else if (in_string) {
            current += c;
        }
    }
    return columns;
}

} // namespace sudoku_potts
