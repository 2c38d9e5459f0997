#include "sudoku_potts/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <span>

#include "sudoku_potts/observables.hpp"
#include "sudoku_potts/parallel.hpp"
#include "sudoku_potts/peer_table.hpp"
#include "sudoku_potts/rng.hpp"
#include "sudoku_potts/sampler.hpp"
#include "sudoku_potts/solver.hpp"
#include "sudoku_potts/variants.hpp"

namespace sudoku_potts {

std::vector<double> linear_temperatures(double t_min, double t_max, int n_points) {
    if (n_points < 1 || t_min > t_max || t_min < 0.0)
        throw std::invalid_argument("bad temperature grid");
    std::vector<double> grid(static_cast<std::size_t>(n_points));
    if (n_points == 1) {
        grid[0] = t_min;
        return grid;
    }
    for (int i = 0; i < n_points; ++i)
        grid[i] = t_min + (t_max - t_min) * i / (n_points - 1);
    return grid;
}

std::vector<double> log_temperatures(double t_min, double t_max, int n_points) {
    if (n_points < 1 || t_min <= 0.0 || t_min > t_max)
        throw std::invalid_argument("bad temperature grid");
    std::vector<double> grid(static_cast<std::size_t>(n_points));
    if (n_points == 1) {
        grid[0] = t_min;
        return grid;
    }
    const double log_min = std::log(t_min), log_max = std::log(t_max);
    for (int i = 0; i < n_points; ++i)
        grid[i] = std::exp(log_min + (log_max - log_min) * i / (n_points - 1));
    return grid;
}

std::vector<double> default_temperature_grid() { return log_temperatures(0.05, 2.0, 40); }

namespace {

double spread_stderr(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 2) return 0.0;
    double mean = 0.0;
    for (const double v : values) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (const double v : values) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / (static_cast<double>(n - 1) * static_cast<double>(n)));
}

// pooled thermodynamic point from one or more replicas at a temperature
ThermoPoint pool_replicas(std::span<const Trajectory> replicas, double temperature,
                          bool with_entropy) {
    ThermoPoint point;
    point.temperature = temperature;

    std::uint64_t n = 0, sum = 0, sum_sq = 0, gs_hits = 0;
    bool any_reference = false;
    for (const Trajectory& traj : replicas) {
        n += traj.n_samples;
        sum += traj.energy_sum;
        sum_sq += traj.energy_sum_sq;
        gs_hits += traj.ground_state_hits;
        any_reference = any_reference || traj.has_reference;
    }
    point.samples = n;
    if (n == 0) return point;

    const double dn = static_cast<double>(n);
    point.mean_energy = static_cast<double>(sum) / dn;

    if (replicas.size() >= 2) {
        // The heat capacity is the energy variance along the dynamics, so it
        // averages the within-replica variances; pooling the samples first
        // would add the spread between replicas frozen in different basins
        // and invent a divergence at low temperature.
        std::vector<double> means, cvs, fractions;
        means.reserve(replicas.size());
        for (const Trajectory& traj : replicas) {
            const MeanStats stats = mean_energy(traj);
            means.push_back(stats.mean);
            if (temperature > 0.0)
                cvs.push_back(stats.variance / (temperature * temperature));
            if (traj.has_reference) fractions.push_back(ground_state_fraction(traj));
        }
        if (temperature > 0.0) {
            point.specific_heat = 0.0;
            for (const double cv : cvs) point.specific_heat += cv;
            point.specific_heat /= static_cast<double>(cvs.size());
        }
        point.stderr_energy = spread_stderr(means);
        point.stderr_cv = spread_stderr(cvs);
        if (any_reference) {
            point.gs_fraction = static_cast<double>(gs_hits) / dn;
            point.stderr_gs = spread_stderr(fractions);
        }
    } else {
        double var = static_cast<double>(sum_sq) / dn - point.mean_energy * point.mean_energy;
        if (var < 0.0) var = 0.0;
        point.specific_heat = temperature > 0.0 ? var / (temperature * temperature) : kNaN;
        const MeanStats stats = mean_energy(replicas.front());
        point.stderr_energy = stats.stderr_mean;
        if (temperature > 0.0)
            point.stderr_cv = specific_heat_stats(replicas.front(), temperature).stderr_cv;
        if (any_reference) {
            point.gs_fraction = ground_state_fraction(replicas.front());
            point.stderr_gs = 0.0;
        }
    }

    if (with_entropy && replicas.front().records_sites()) {
        // single-trajectory mode: every replica averaged on its own
        std::vector<double> singles;
        singles.reserve(replicas.size());
        for (const Trajectory& traj : replicas)
            singles.push_back(shannon_entropy(accumulate_site_probabilities({&traj, 1}))
                                  .per_site);
        point.entropy_single = 0.0;
        for (const double s : singles) point.entropy_single += s;
        point.entropy_single /= static_cast<double>(singles.size());
        point.stderr_entropy_single = spread_stderr(singles);

        // multi-anneal mode: probabilities pooled across all replicas
        point.entropy_multi =
            shannon_entropy(accumulate_site_probabilities(replicas)).per_site;
        if (replicas.size() >= 2) {
            // leave-one-out jackknife on the pooled occupancy counts
            const std::size_t n_bins = replicas.front().site_counts.size();
            std::vector<std::uint64_t> pooled(n_bins, 0);
            std::uint64_t pooled_samples = 0;
            for (const Trajectory& traj : replicas) {
                for (std::size_t i = 0; i < n_bins; ++i) pooled[i] += traj.site_counts[i];
                pooled_samples += traj.n_samples;
            }
            const double n_cells = static_cast<double>(replicas.front().n_cells);
            std::vector<double> loo;
            loo.reserve(replicas.size());
            for (const Trajectory& traj : replicas) {
                const double denom =
                    static_cast<double>(pooled_samples - traj.n_samples);
                double s = 0.0;
                for (std::size_t i = 0; i < n_bins; ++i) {
                    const double p =
                        static_cast<double>(pooled[i] - traj.site_counts[i]) / denom;
                    if (p > 0.0) s -= p * std::log(p);
                }
                loo.push_back(s / n_cells);
            }
            const double r = static_cast<double>(loo.size());
            double loo_mean = 0.0;
            for (const double s : loo) loo_mean += s;
            loo_mean /= r;
            double ss = 0.0;
            for (const double s : loo) ss += (s - loo_mean) * (s - loo_mean);
            point.stderr_entropy_multi = std::sqrt((r - 1.0) / r * ss);
        } else {
            point.stderr_entropy_multi = 0.0;
        }
    }
    return point;
}

} // namespace

SweepResult temperature_sweep(const PuzzleSpec& spec, const ExperimentConfig& config) {
    if (config.temperatures.empty())
        throw std::invalid_argument("temperature grid is empty");
    if (!std::is_sorted(config.temperatures.begin(), config.temperatures.end()))
        throw std::invalid_argument("temperature grid must be sorted ascending");

    const PeerTable peers = build_peer_table(spec.geometry);
    SweepResult result;
    result.puzzle_label = spec.label;
    result.clue_count = spec.clue_count();
    result.multiplicity = classify_multiplicity(spec);
    result.seed = config.seed;

    const std::optional<Grid> reference = solve_one(spec);

    RunOptions options;
    options.n_steps = config.steps;
    options.burn_in = config.burn_in;
    options.stride = config.stride;
    options.record_site_histogram = config.record_entropy;
    if (config.record_entropy && config.stride != 1)
        throw std::invalid_argument("entropy recording requires stride 1");

    result.points.resize(config.temperatures.size());
    parallel_for(config.temperatures.size(), config.threads, [&](std::size_t t_index) {
        const double t = config.temperatures[t_index];
        const std::uint64_t point_seed = derive_stream_seed(config.seed, t_index);
        std::vector<Trajectory> replicas(static_cast<std::size_t>(config.replicas));
        for (int r = 0; r < config.replicas; ++r)
            replicas[static_cast<std::size_t>(r)] =
                run_trajectory(spec, peers, t, options, derive_stream_seed(point_seed, r),
                               reference ? &*reference : nullptr);
        result.points[t_index] = pool_replicas(replicas, t, config.record_entropy);
    });
    return result;
}

int interior_argmax(std::span<const double> values) {
    if (values.size() < 3) return -1;
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] > values[best]) best = i;
    if (best == 0 || best + 1 == values.size()) return -1;
    return static_cast<int>(best);
}

TcEstimate locate_tc(const SweepResult& sweep) {
    if (sweep.points.size() < 5)
        throw std::invalid_argument("locate_tc needs at least 5 sweep points");

    std::vector<double> cv(sweep.points.size());
    for (std::size_t i = 0; i < sweep.points.size(); ++i) cv[i] = sweep.points[i].specific_heat;

    // The peak is identified on a median-of-3 filtered curve: deep in the
    // glassy regime a single rare transition inside the measurement window
    // can blow up one point's variance far beyond the paramagnetic peak, and
    // the median suppresses such isolated spikes while leaving any smooth
    // rounded peak (and the exact-parabola case) untouched.
    std::vector<double> filtered(cv);
    for (std::size_t i = 1; i + 1 < cv.size(); ++i) {
        double a = cv[i - 1], b = cv[i], c = cv[i + 1];
        filtered[i] = std::max(std::min(a, b), std::min(std::max(a, b), c));
    }

    TcEstimate estimate;
    const int m = interior_argmax(filtered);
    if (m < 0) return estimate;  // unbracketed
    estimate.peak_index = m;
    estimate.peak_cv = cv[m];

    const double x1 = sweep.points[m - 1].temperature;
    const double x2 = sweep.points[m].temperature;
    const double x3 = sweep.points[m + 1].temperature;
    const double y1 = cv[m - 1], y2 = cv[m], y3 = cv[m + 1];

    // parabola through the three points, in coordinates centered on the peak
    const double u1 = x1 - x2, u3 = x3 - x2;
    const double d1 = y1 - y2, d3 = y3 - y2;
    const double denom = u1 * u3 * (u1 - u3);
    const double a = (d1 * u3 - d3 * u1) / denom;
    const double b = (d3 * u1 * u1 - d1 * u3 * u3) / denom;

    estimate.bracketed = true;
    // the 3-point fit cannot resolve a rounded peak below the grid scale;
    // half the local spacing is its resolution and floors the uncertainty
    const double spacing_floor = 0.5 * std::min(-u1, u3);
    if (!(a < 0.0)) {
        // flat top: the sampled maximum is the best estimate available
        estimate.tc = x2;
        estimate.uncertainty = std::max(-u1, u3);
        return estimate;
    }
    const double vertex = -b / (2.0 * a);
    estimate.tc = x2 + std::clamp(vertex, u1, u3);

    // error bars propagated through the vertex formula (delta method)
    const double s1 = sweep.points[m - 1].stderr_cv;
    const double s2 = sweep.points[m].stderr_cv;
    const double s3 = sweep.points[m + 1].stderr_cv;
    double propagated = 0.0;
    if (std::isfinite(s1) && std::isfinite(s2) && std::isfinite(s3)) {
        const double da_d1 = u3 / denom, da_d3 = -u1 / denom;
        const double db_d1 = -u3 * u3 / denom, db_d3 = u1 * u1 / denom;
        const double dv_da = b / (2.0 * a * a), dv_db = -1.0 / (2.0 * a);
        const double dv_dy1 = dv_da * da_d1 + dv_db * db_d1;
        const double dv_dy3 = dv_da * da_d3 + dv_db * db_d3;
        const double dv_dy2 = -(dv_dy1 + dv_dy3);
        propagated = std::sqrt(dv_dy1 * dv_dy1 * s1 * s1 + dv_dy2 * dv_dy2 * s2 * s2 +
                               dv_dy3 * dv_dy3 * s3 * s3);
    }

    // fit-window sensitivity: a least-squares parabola over five points moves
    // the vertex by the amount the peak-region noise wiggles the fit; zero on
    // an exact parabola
    double window_term = 0.0;
    if (m >= 2 && m + 2 < static_cast<int>(cv.size())) {
        double s_u = 0, s_u2 = 0, s_u3 = 0, s_u4 = 0, s_y = 0, s_uy = 0, s_u2y = 0;
        for (int k = m - 2; k <= m + 2; ++k) {
            const double u = sweep.points[k].temperature - x2;
            const double y = cv[k];
            const double u2 = u * u;
            s_u += u;
            s_u2 += u2;
            s_u3 += u2 * u;
            s_u4 += u2 * u2;
            s_y += y;
            s_uy += u * y;
            s_u2y += u2 * y;
        }
        // normal equations for y = A u^2 + B u + C over n = 5 points
        const double n5 = 5.0;
        const double det = s_u4 * (s_u2 * n5 - s_u * s_u) - s_u3 * (s_u3 * n5 - s_u * s_u2) +
                           s_u2 * (s_u3 * s_u - s_u2 * s_u2);
        if (det != 0.0) {
            const double a5 = (s_u2y * (s_u2 * n5 - s_u * s_u) -
                               s_u3 * (s_uy * n5 - s_u * s_y) +
                               s_u2 * (s_uy * s_u - s_u2 * s_y)) / det;
            const double b5 = (s_u4 * (s_uy * n5 - s_y * s_u) -
                               s_u2y * (s_u3 * n5 - s_u * s_u2) +
                               s_u2 * (s_u3 * s_y - s_uy * s_u2)) / det;
            if (a5 < 0.0) {
                const double vertex5 = std::clamp(-b5 / (2.0 * a5), 2.0 * u1, 2.0 * u3);
                window_term = std::fabs(vertex5 - vertex);
            }
        }
    }

    estimate.uncertainty =
        std::sqrt(propagated * propagated + spacing_floor * spacing_floor +
                  window_term * window_term);
    return estimate;
}

namespace {

ClueSweepRow measure_low_t(const PuzzleSpec& variant, const PeerTable& peers,
                           const ExperimentConfig& config, std::uint64_t seed) {
    ClueSweepRow row;
    row.probe_temperature = config.probe_temperature;

    RunOptions options;
    options.n_steps = config.equilibration + config.probe_window;
    options.burn_in = config.equilibration;

    std::vector<Trajectory> replicas(static_cast<std::size_t>(config.probe_replicas));
    for (int r = 0; r < config.probe_replicas; ++r)
        replicas[static_cast<std::size_t>(r)] =
            run_trajectory(variant, peers, config.probe_temperature, options,
                           derive_stream_seed(seed, r));
    const ThermoPoint point = pool_replicas(replicas, config.probe_temperature, false);
    row.mean_energy = point.mean_energy;
    row.stderr_energy = point.stderr_energy;
    row.samples = point.samples;
    return row;
}

bool class_matches(MultiplicityFilter filter, const std::string& multiplicity) {
    switch (filter) {
        case MultiplicityFilter::any: return true;
        case MultiplicityFilter::unique_only: return multiplicity == "1";
        case MultiplicityFilter::multiple_only: return multiplicity == ">=2";
    }
    return false;
}

} // namespace

ClueSweepResult clue_sweep(const PuzzleSpec& base, const Grid& reference,
                           const std::vector<int>& clue_counts, ClueSweepMode mode,
                           const ExperimentConfig& config, MultiplicityFilter filter) {
    if (!base.agrees_with_clues(reference))
        throw InvalidPuzzleError("reference grid does not solve the base puzzle");
    const PeerTable peers = build_peer_table(base.geometry);

    ClueSweepResult result;
    result.base_label = base.label;
    result.mode = mode;

    struct PlannedVariant {
        int clue_count;
        std::uint64_t seed;
        PuzzleSpec spec;
        std::string multiplicity;
    };
    std::vector<PlannedVariant> planned;

    for (const int count : clue_counts) {
        const std::uint64_t count_seed =
            derive_stream_seed(config.seed, static_cast<std::uint64_t>(count));
        int kept = 0;
        for (int attempt = 0; attempt < config.max_variant_tries; ++attempt) {
            if (kept == config.variants_per_count) break;
            const std::uint64_t variant_seed =
                derive_stream_seed(count_seed, static_cast<std::uint64_t>(attempt));
            PuzzleSpec variant = make_variant(base, reference, count, variant_seed);
            std::string multiplicity = classify_multiplicity(variant);
            if (!class_matches(filter, multiplicity)) continue;
            planned.push_back({count, variant_seed, std::move(variant), std::move(multiplicity)});
            ++kept;
        }
        if (kept < config.variants_per_count)
            throw InvalidPuzzleError("could not find " +
                                     std::to_string(config.variants_per_count) +
                                     " variants of the requested multiplicity class at " +
                                     std::to_string(count) + " clues");
    }

    result.rows.resize(planned.size());
    parallel_for(planned.size(), config.threads, [&](std::size_t i) {
        const PlannedVariant& variant = planned[i];
        ClueSweepRow row;
        if (variant.spec.free_cells.empty()) {
            // fully clued grid: no dynamics, at its (zero-energy) solution
            row.probe_temperature = config.probe_temperature;
            row.mean_energy = 0.0;
            row.stderr_energy = 0.0;
            row.tc = kNaN;
        } else if (mode == ClueSweepMode::low_t_energy) {
            row = measure_low_t(variant.spec, peers, config, variant.seed);
        } else {
            ExperimentConfig sweep_config = config;
            sweep_config.seed = variant.seed;
            const SweepResult sweep = temperature_sweep(variant.spec, sweep_config);
            const TcEstimate estimate = locate_tc(sweep);
            row.bracketed = estimate.bracketed;
            row.tc = estimate.tc;
            row.tc_err = estimate.uncertainty;
        }
        row.clue_count = variant.clue_count;
        row.variant_seed = variant.seed;
        row.multiplicity = variant.multiplicity;
        result.rows[i] = row;
    });

    // per-(count, class) averages of the measured quantity
    for (const int count : clue_counts) {
        for (const char* cls : {"0", "1", ">=2"}) {
            std::vector<double> values;
            for (const ClueSweepRow& row : result.rows) {
                if (row.clue_count != count || row.multiplicity != cls) continue;
                const double v = mode == ClueSweepMode::tc ? row.tc : row.mean_energy;
                if (std::isfinite(v)) values.push_back(v);
            }
            if (values.empty()) continue;
            ClueSweepAggregate aggregate;
            aggregate.clue_count = count;
            aggregate.multiplicity = cls;
            aggregate.n_variants = static_cast<int>(values.size());
            double mean = 0.0;
            for (const double v : values) mean += v;
            aggregate.value = mean / static_cast<double>(values.size());
            aggregate.stderr = spread_stderr(values);
            result.aggregates.push_back(std::move(aggregate));
        }
    }
    return result;
}

SweepResult glass_experiment(const PuzzleSpec& spec, const ExperimentConfig& config) {
    const std::string multiplicity = classify_multiplicity(spec);
    if (multiplicity != "1")
        throw InvalidPuzzleError("glass experiment needs a unique-solution puzzle; this one has " +
                                 multiplicity + " solutions");
    const Grid reference = *solve_one(spec);
    const PeerTable peers = build_peer_table(spec.geometry);

    SweepResult result;
    result.puzzle_label = spec.label;
    result.clue_count = spec.clue_count();
    result.multiplicity = multiplicity;
    result.seed = config.seed;
    result.points.resize(config.temperatures.size());

    // replicas of every temperature point flattened into one parallel batch
    const std::size_t n_replicas = static_cast<std::size_t>(config.glass_replicas);
    std::vector<std::vector<Trajectory>> per_point(config.temperatures.size());
    for (auto& replicas : per_point) replicas.resize(n_replicas);

    RunOptions options;
    options.n_steps = config.replica_steps;
    options.burn_in = config.replica_steps - config.stats_window;
    options.stride = 1;
    options.record_site_histogram = true;

    parallel_for(config.temperatures.size() * n_replicas, config.threads, [&](std::size_t i) {
        const std::size_t t_index = i / n_replicas;
        const std::size_t r = i % n_replicas;
        const std::uint64_t point_seed = derive_stream_seed(config.seed, t_index);
        per_point[t_index][r] =
            run_trajectory(spec, peers, config.temperatures[t_index], options,
                           derive_stream_seed(point_seed, r), &reference);
    });

    for (std::size_t t_index = 0; t_index < config.temperatures.size(); ++t_index)
        result.points[t_index] =
            pool_replicas(per_point[t_index], config.temperatures[t_index], true);
    return result;
}

PuzzleSpec trim_to_unique(const Grid& solution, const Geometry& geo, int target_clues,
                          std::uint64_t seed, int max_tries_per_level) {
    PuzzleSpec current = make_spec(geo, solution.values);
    if (target_clues > geo.n_cells || target_clues < 0)
        throw std::invalid_argument("target clue count out of range");
    while (current.clue_count() > target_clues) {
        const int next_count = current.clue_count() - 1;
        bool stepped = false;
        for (int attempt = 0; attempt < max_tries_per_level; ++attempt) {
            const std::uint64_t level_seed = derive_stream_seed(
                seed, static_cast<std::uint64_t>(next_count) * 100'000 +
                          static_cast<std::uint64_t>(attempt));
            PuzzleSpec candidate = make_variant(current, solution, next_count, level_seed);
            if (count_solutions(candidate, 2) == 1) {
                current = std::move(candidate);
                stepped = true;
                break;
            }
        }
        if (!stepped)
            throw std::runtime_error("no unique puzzle found below " +
                                     std::to_string(current.clue_count()) + " clues");
    }
    return current;
}

} // namespace sudoku_potts
