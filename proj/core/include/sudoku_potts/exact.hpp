#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "sudoku_potts/observables.hpp"
#include "sudoku_potts/puzzle.hpp"

namespace sudoku_potts {

struct StateSpaceCapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExactPoint {
    double temperature = 0.0;
    double mean_energy = 0.0;
    double var_energy = 0.0;
    double specific_heat = 0.0;
    ShannonEntropy entropy;
    SiteProbabilities site_probabilities;
};

struct ExactTable {
    std::uint64_t n_microstates = 0;
    int min_energy = 0;
    std::uint64_t ground_degeneracy = 0;          // # states at min_energy
    std::vector<std::uint64_t> energy_histogram;  // index = H, over all completions
    std::vector<ExactPoint> points;               // one per requested temperature
};

// Full enumeration of every completion of the free cells: the exact Boltzmann
// averages (mean energy, specific heat, per-site probabilities, Shannon
// entropy) at each temperature. Weights are taken relative to the minimum
// energy, so arbitrarily small temperatures stay finite and converge to the
// ground-state(s) limit. This is the validation oracle the Monte Carlo
// pipeline is gated against on small instances.
//
// Throws StateSpaceCapExceeded when n_states^n_free > state_cap.
ExactTable exact_reference(const PuzzleSpec& spec, std::span<const double> temperatures,
                           std::uint64_t state_cap = 100'000'000);

} // namespace sudoku_potts
