#ifndef SPDC_ENSEMBLE_HPP
#define SPDC_ENSEMBLE_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "spdc/lattice.hpp"
#include "spdc/spectrum.hpp"

namespace spdc {

struct RealizationResult {
    std::uint64_t index = 0;
    double overlap = 0.0;  // Bhattacharyya vs disorder-free reference
    double shift_nm = 0.0; // resonance-peak shift vs reference
    double shift_db = 0.0; // same, on the detune axis [1/mm]
};

struct EnsembleStats {
    double disorder = 0.0;
    int n_realizations = 0;
    double overlap_mean = 0.0, overlap_std = 0.0;
    double shift_mean_nm = 0.0, shift_std_nm = 0.0;
    double shift_mean_db = 0.0, shift_std_db = 0.0;
    std::vector<RealizationResult> per_realization;
    std::vector<std::uint64_t> boundary_realizations; // peak-on-boundary diagnostics
};

struct EnsembleOptions {
    int threads = 1;
    bool keep_realizations = true;
    bool ode_guard = true;   // cross-check one realization against the integrator
    double guard_tol = 1e-6;
    double diagonal_disorder = 0.0; // experimental on-site disorder, off by default
};

// Monte Carlo over n coupling-disorder realizations at a fixed strength.
// Realization r draws from the substream keyed by (master_seed, r); spectra
// use the closed-form solver; aggregation runs in realization-index order so
// results are independent of the thread count. Standard deviations use the
// unbiased (n-1) estimator.
EnsembleStats run_ensemble(const LatticeSpec& spec, double disorder, int n,
                           std::uint64_t master_seed, const SpectrumGrid& grid,
                           const WavelengthMap& map, const EnsembleOptions& opt = {});

struct SweepResult {
    std::string geometry_label;
    std::vector<EnsembleStats> rows; // ascending disorder
    Spectrum reference;              // disorder-free spectrum
    LatticeSpec spec;
    SpectrumGrid grid;
    WavelengthMap map;
    std::uint64_t master_seed = 0;
    int n_realizations = 0;
};

// One ensemble per disorder value. Row k draws from the substream keyed by
// (master_seed, k), so extending the sweep never perturbs existing rows.
SweepResult disorder_sweep(const LatticeSpec& spec, std::span<const double> disorder_list,
                           int n, std::uint64_t master_seed, const SpectrumGrid& grid,
                           const WavelengthMap& map, const EnsembleOptions& opt = {});

// Runs fn(0..count-1) on up to `threads` workers; the caller owns result
// placement, so output is schedule-independent.
void parallel_for_index(int count, int threads, const std::function<void(int)>& fn);

} // namespace spdc

#endif
