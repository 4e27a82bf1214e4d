#include "spdc/ensemble.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "spdc/rng.hpp"
#include "spdc/supermodes.hpp"

namespace spdc {

void parallel_for_index(int count, int threads, const std::function<void(int)>& fn) {
    threads = std::min(threads, count);
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }

    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

namespace {

struct MeanStd {
    double mean = 0.0;
    double std = 0.0;
};

MeanStd mean_std(const std::vector<double>& v) {
    MeanStd r;
    const double n = static_cast<double>(v.size());
    for (double x : v) r.mean += x;
    r.mean /= n;
    if (v.size() > 1) {
        double ss = 0.0;
        for (double x : v) ss += (x - r.mean) * (x - r.mean);
        r.std = std::sqrt(ss / (n - 1.0));
    }
    return r;
}

// Cross-check the closed form against the RK4 integrator on one realization,
// at a handful of detunes spread over the grid.
void solver_guard(const Lattice& lat, const SpectrumGrid& grid, double tol) {
    const int c = lat.center();
    const ClosedFormSolver cf(lat);
    const int g = grid.size();
    double max_diff = 0.0, max_ref = 0.0;
    for (int k = 0; k < 7; ++k) {
        const double d = grid.points[static_cast<std::size_t>(k * (g - 1) / 6)];
        const std::complex<double> a = cf.central_amplitude(d);
        const std::complex<double> b = integrate_biphoton(lat, d).psi(c, c);
        max_diff = std::max(max_diff, std::abs(a - b));
        max_ref = std::max(max_ref, std::abs(b));
    }
    if (max_diff > tol * std::max(max_ref, 1e-300))
        throw NumericalError("closed-form/integrator cross-check failed: max diff " +
                             std::to_string(max_diff));
}

} // namespace

EnsembleStats run_ensemble(const LatticeSpec& spec, double disorder, int n,
                           std::uint64_t master_seed, const SpectrumGrid& grid,
                           const WavelengthMap& map, const EnsembleOptions& opt) {
    spec.validate();
    grid.validate();
    map.validate();
    if (n < 2) throw std::invalid_argument("ensemble needs n >= 2 realizations");
    if (disorder < 0.0 || disorder >= 1.0)
        throw std::invalid_argument("disorder strength must lie in [0, 1)");

    const Lattice nominal = build_lattice(spec);
    const Spectrum reference = resonance_spectrum(nominal, grid, SolverKind::ClosedForm);

    auto realize = [&](std::uint64_t r) {
        return apply_disorder(nominal, DisorderSpec{disorder, master_seed, r,
                                                    opt.diagonal_disorder});
    };

    std::vector<RealizationResult> results(static_cast<std::size_t>(n));
    std::vector<std::uint8_t> on_boundary(static_cast<std::size_t>(n), 0);
    parallel_for_index(n, opt.threads, [&](int r) {
        const Lattice lat = realize(static_cast<std::uint64_t>(r));
        const Spectrum s = resonance_spectrum(lat, grid, SolverKind::ClosedForm);
        RealizationResult& out = results[static_cast<std::size_t>(r)];
        out.index = static_cast<std::uint64_t>(r);
        out.overlap = spectral_overlap(s, reference);
        out.shift_db = s.peak_detune - reference.peak_detune;
        out.shift_nm = detune_to_wavelength_nm(out.shift_db, map);
        on_boundary[static_cast<std::size_t>(r)] = s.peak_on_boundary ? 1 : 0;
    });

    if (opt.ode_guard) {
        const std::uint64_t pick = substream_seed(master_seed, 0x67756172ULL) %
                                   static_cast<std::uint64_t>(n);
        solver_guard(realize(pick), grid, opt.guard_tol);
    }

    EnsembleStats stats;
    stats.disorder = disorder;
    stats.n_realizations = n;
    std::vector<double> overlaps, shifts_nm, shifts_db;
    overlaps.reserve(results.size());
    shifts_nm.reserve(results.size());
    shifts_db.reserve(results.size());
    for (const RealizationResult& r : results) {
        overlaps.push_back(r.overlap);
        shifts_nm.push_back(r.shift_nm);
        shifts_db.push_back(r.shift_db);
    }
    const MeanStd o = mean_std(overlaps), snm = mean_std(shifts_nm), sdb = mean_std(shifts_db);
    stats.overlap_mean = o.mean;
    stats.overlap_std = o.std;
    stats.shift_mean_nm = snm.mean;
    stats.shift_std_nm = snm.std;
    stats.shift_mean_db = sdb.mean;
    stats.shift_std_db = sdb.std;
    for (std::size_t r = 0; r < on_boundary.size(); ++r)
        if (on_boundary[r]) stats.boundary_realizations.push_back(static_cast<std::uint64_t>(r));
    if (opt.keep_realizations) stats.per_realization = std::move(results);
    return stats;
}

SweepResult disorder_sweep(const LatticeSpec& spec, std::span<const double> disorder_list,
                           int n, std::uint64_t master_seed, const SpectrumGrid& grid,
                           const WavelengthMap& map, const EnsembleOptions& opt) {
    if (disorder_list.empty()) throw std::invalid_argument("empty disorder list");
    for (std::size_t i = 0; i < disorder_list.size(); ++i) {
        if (disorder_list[i] < 0.0 || disorder_list[i] >= 1.0)
            throw std::invalid_argument("disorder strength must lie in [0, 1)");
        if (i > 0 && !(disorder_list[i] > disorder_list[i - 1]))
            throw std::invalid_argument("disorder list must be strictly ascending");
    }

    SweepResult sweep;
    sweep.geometry_label = to_string(spec.geometry);
    sweep.spec = spec;
    sweep.grid = grid;
    sweep.map = map;
    sweep.master_seed = master_seed;
    sweep.n_realizations = n;
    sweep.reference = resonance_spectrum(build_lattice(spec), grid, SolverKind::ClosedForm);
    sweep.rows.reserve(disorder_list.size());
    for (std::size_t k = 0; k < disorder_list.size(); ++k) {
        const std::uint64_t row_seed = substream_seed(master_seed, k);
        sweep.rows.push_back(
            run_ensemble(spec, disorder_list[k], n, row_seed, grid, map, opt));
    }
    return sweep;
}

} // namespace spdc
