#include "spdc/cli/commands.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <ostream>

#include <json.hpp>

#include "spdc/cli/csv.hpp"
#include "spdc/cli/svg.hpp"
#include "spdc/rng.hpp"
#include "spdc/version.hpp"

namespace spdc::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string utc_now() {
    const std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

json config_json(const RunConfig& cfg) {
    json j;
    j["geometry"] = to_string(cfg.spec.geometry);
    j["n_guides"] = cfg.spec.n_guides;
    j["coupling"] = cfg.spec.mean_coupling;
    j["dimerization"] = cfg.spec.dimerization;
    j["defect_detune"] = cfg.spec.defect_detune;
    j["pump_ratio"] = cfg.spec.pump_ratio;
    j["length"] = cfg.spec.length;
    j["spdc_gain"] = cfg.spec.spdc_gain;
    j["disorder"] = cfg.disorder;
    j["disorder_list"] = cfg.disorder_list;
    j["realizations"] = cfg.realizations;
    j["master_seed"] = cfg.master_seed;
    j["realization_index"] = cfg.realization_index;
    j["grid_min"] = cfg.grid_min;
    j["grid_max"] = cfg.grid_max;
    j["grid_points"] = cfg.grid_points;
    j["dispersion_ps_mm"] = cfg.map.dispersion_ps_per_mm;
    j["lambda0_nm"] = cfg.map.lambda0_nm;
    j["solver"] = to_string(cfg.solver);
    j["threads"] = cfg.threads;
    j["out_dir"] = cfg.out_dir;
    std::vector<std::string> geoms;
    for (Geometry g : cfg.geometries) geoms.emplace_back(to_string(g));
    j["geometries"] = geoms;
    j["diagonal_disorder"] = cfg.diagonal_disorder;
    j["modes_field"] = cfg.modes_field == FieldKind::Spdc ? "spdc" : "pump";
    return j;
}

void write_manifest(const RunConfig& cfg, const std::string& command,
                    const std::vector<std::string>& outputs, double wall_s) {
    json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["command"] = command;
    j["rng_scheme"] = kRngSchemeId;
    j["generated_utc"] = utc_now();
    j["wall_clock_s"] = wall_s;
    j["outputs"] = outputs;
    j["config"] = config_json(cfg);
    j["config_text"] = canonical_config_text(cfg);
    write_text_file(fs::path(cfg.out_dir) / "manifest.json", j.dump(2) + "\n");
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

Lattice build_with_warning(const LatticeSpec& spec, std::ostream& err) {
    std::string warning;
    Lattice lat = build_lattice(spec, &warning);
    if (!warning.empty()) err << "warning: " << warning << '\n';
    return lat;
}

void warn_boundary(const EnsembleStats& row, const std::string& label, std::ostream& err) {
    for (std::uint64_t r : row.boundary_realizations)
        err << "warning: " << label << " disorder " << format_number(row.disorder)
            << " realization " << r << ": resonance peak on grid boundary (grid too narrow)\n";
}

} // namespace

std::string sweep_csv(const SweepResult& sweep) {
    CsvBuilder csv(
        "geometry,disorder,n,overlap_mean,overlap_std,shift_mean_nm,shift_std_nm,"
        "shift_mean_mm_inv,shift_std_mm_inv");
    for (const EnsembleStats& row : sweep.rows) {
        csv.field(sweep.geometry_label)
            .field(row.disorder)
            .field(static_cast<std::int64_t>(row.n_realizations))
            .field(row.overlap_mean)
            .field(row.overlap_std)
            .field(row.shift_mean_nm)
            .field(row.shift_std_nm)
            .field(row.shift_mean_db)
            .field(row.shift_std_db);
        csv.end_row();
    }
    return csv.str();
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& err) {
    const Timer timer;
    fs::create_directories(cfg.out_dir);
    const Lattice nominal = build_with_warning(cfg.spec, err);
    const SpectrumGrid grid = cfg.grid();

    const int n_disordered = cfg.disorder > 0.0 ? cfg.realizations : 0;
    std::vector<Spectrum> spectra;
    spectra.reserve(static_cast<std::size_t>(n_disordered) + 1);
    spectra.push_back(resonance_spectrum(nominal, grid, cfg.solver));
    for (int r = 0; r < n_disordered; ++r) {
        const Lattice lat = apply_disorder(
            nominal, DisorderSpec{cfg.disorder, cfg.master_seed,
                                  static_cast<std::uint64_t>(r), cfg.diagonal_disorder});
        spectra.push_back(resonance_spectrum(lat, grid, cfg.solver));
    }

    CsvBuilder csv("realization,detune_mm_inv,dlambda_nm,intensity_norm");
    for (std::size_t s = 0; s < spectra.size(); ++s) {
        const std::int64_t id = static_cast<std::int64_t>(s) - 1; // -1 = disorder-free
        if (spectra[s].peak_on_boundary)
            err << "warning: realization " << id
                << ": resonance peak on grid boundary (grid too narrow)\n";
        for (int i = 0; i < grid.size(); ++i) {
            const double d = grid.points[static_cast<std::size_t>(i)];
            csv.field(id)
                .field(d)
                .field(detune_to_wavelength_nm(d, cfg.map))
                .field(spectra[s].intensity[static_cast<std::size_t>(i)]);
            csv.end_row();
        }
    }
    write_text_file(fs::path(cfg.out_dir) / "spectrum.csv", csv.str());

    Panel panel;
    panel.title = std::string("SPDC resonance spectrum (") + to_string(cfg.spec.geometry) + ")";
    panel.xlabel = "detune [1/mm]";
    panel.ylabel = "normalized intensity";
    for (std::size_t s = 1; s < spectra.size(); ++s) {
        Series line;
        line.x = grid.points;
        line.y = spectra[s].intensity;
        line.color = color_palette()[(s - 1) % color_palette().size()];
        line.width = 1.0;
        panel.lines.push_back(std::move(line));
    }
    Series ref;
    ref.x = grid.points;
    ref.y = spectra[0].intensity;
    ref.color = "#000000";
    ref.width = 2.5;
    ref.label = "disorder-free";
    panel.lines.push_back(std::move(ref)); // drawn last, on top
    write_text_file(fs::path(cfg.out_dir) / "spectrum.svg", render_panels({panel}));

    write_manifest(cfg, "spectrum", {"spectrum.csv", "spectrum.svg"}, timer.seconds());
    return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& err) {
    const Timer timer;
    if (cfg.disorder_list.empty())
        throw ConfigError("sweep requires a disorder_list");
    fs::create_directories(cfg.out_dir);
    build_with_warning(cfg.spec, err); // surface degenerate-parameter warnings

    const SweepResult sweep = disorder_sweep(cfg.spec, cfg.disorder_list, cfg.realizations,
                                             cfg.master_seed, cfg.grid(), cfg.map,
                                             cfg.ensemble_options());
    for (const EnsembleStats& row : sweep.rows) warn_boundary(row, sweep.geometry_label, err);

    write_text_file(fs::path(cfg.out_dir) / "sweep.csv", sweep_csv(sweep));

    Panel overlap_panel, shift_panel;
    overlap_panel.title = "Spectral overlap vs disorder";
    overlap_panel.xlabel = "disorder strength";
    overlap_panel.ylabel = "overlap";
    shift_panel.title = "Resonance-shift fluctuations";
    shift_panel.xlabel = "disorder strength";
    shift_panel.ylabel = "shift std [nm]";
    ErrorSeries ov, sh;
    ov.color = color_palette()[0];
    sh.color = color_palette()[1];
    for (const EnsembleStats& row : sweep.rows) {
        ov.x.push_back(row.disorder);
        ov.y.push_back(row.overlap_mean);
        ov.yerr.push_back(row.overlap_std);
        sh.x.push_back(row.disorder);
        sh.y.push_back(row.shift_std_nm);
        sh.yerr.push_back(0.0);
    }
    overlap_panel.points.push_back(std::move(ov));
    Series shift_line;
    shift_line.x = sh.x;
    shift_line.y = sh.y;
    shift_line.color = sh.color;
    shift_panel.lines.push_back(std::move(shift_line));
    shift_panel.points.push_back(std::move(sh));
    write_text_file(fs::path(cfg.out_dir) / "sweep.svg",
                    render_panels({overlap_panel, shift_panel}));

    write_manifest(cfg, "sweep", {"sweep.csv", "sweep.svg"}, timer.seconds());
    return kExitOk;
}

int cmd_modes(const RunConfig& cfg, std::ostream& err) {
    const Timer timer;
    fs::create_directories(cfg.out_dir);
    Lattice lat = build_with_warning(cfg.spec, err);
    if (cfg.disorder > 0.0)
        lat = apply_disorder(lat, DisorderSpec{cfg.disorder, cfg.master_seed,
                                               cfg.realization_index, cfg.diagonal_disorder});

    const SupermodeBasis basis = eigendecompose(lat, cfg.modes_field);
    const int localized = localized_mode_index(basis, lat);
    const int n = basis.size();
    const int center = lat.center();

    CsvBuilder csv(
        "index,eigenvalue_mm_inv,participation_ratio,central_weight,"
        "odd_sublattice_weight,is_localized");
    for (int m = 0; m < n; ++m) {
        const Eigen::VectorXd v = basis.eigenvectors.col(m);
        csv.field(static_cast<std::int64_t>(m))
            .field(basis.eigenvalues(m))
            .field(participation_ratio(v))
            .field(v(center) * v(center))
            .field(odd_sublattice_weight(v))
            .field(static_cast<std::int64_t>(m == localized ? 1 : 0));
        csv.end_row();
    }
    write_text_file(fs::path(cfg.out_dir) / "modes.csv", csv.str());

    std::string header = "site";
    for (int m = 0; m < n; ++m) header += ",mode_" + std::to_string(m);
    CsvBuilder vec_csv(header);
    for (int i = 0; i < n; ++i) {
        vec_csv.field(static_cast<std::int64_t>(i));
        for (int m = 0; m < n; ++m) vec_csv.field(basis.eigenvectors(i, m));
        vec_csv.end_row();
    }
    write_text_file(fs::path(cfg.out_dir) / "eigenvectors.csv", vec_csv.str());

    write_manifest(cfg, "modes", {"modes.csv", "eigenvectors.csv"}, timer.seconds());
    return kExitOk;
}

int cmd_compare(const RunConfig& cfg, std::ostream& err) {
    const Timer timer;
    if (cfg.geometries.size() < 2)
        throw ConfigError("compare requires at least two geometries");
    if (cfg.disorder_list.empty())
        throw ConfigError("compare requires a disorder_list");
    fs::create_directories(cfg.out_dir);

    std::vector<SweepResult> sweeps;
    sweeps.reserve(cfg.geometries.size());
    for (std::size_t g = 0; g < cfg.geometries.size(); ++g) {
        LatticeSpec spec = cfg.spec;
        spec.geometry = cfg.geometries[g];
        build_with_warning(spec, err);
        // independent draws per geometry
        const std::uint64_t seed = substream_seed(cfg.master_seed, g);
        sweeps.push_back(disorder_sweep(spec, cfg.disorder_list, cfg.realizations, seed,
                                        cfg.grid(), cfg.map, cfg.ensemble_options()));
        for (const EnsembleStats& row : sweeps.back().rows)
            warn_boundary(row, sweeps.back().geometry_label, err);
    }

    CsvBuilder csv(
        "geometry,disorder,n,shift_std_nm,shift_std_mm_inv,overlap_mean,overlap_std");
    for (const SweepResult& sweep : sweeps) {
        for (const EnsembleStats& row : sweep.rows) {
            csv.field(sweep.geometry_label)
                .field(row.disorder)
                .field(static_cast<std::int64_t>(row.n_realizations))
                .field(row.shift_std_nm)
                .field(row.shift_std_db)
                .field(row.overlap_mean)
                .field(row.overlap_std);
            csv.end_row();
        }
    }
    write_text_file(fs::path(cfg.out_dir) / "compare.csv", csv.str());

    BarChart shifts, overlaps;
    shifts.title = "Resonance-shift fluctuations";
    shifts.ylabel = "shift std [nm]";
    overlaps.title = "Mean spectral overlap";
    overlaps.ylabel = "overlap";
    for (const SweepResult& sweep : sweeps) {
        shifts.categories.push_back(sweep.geometry_label);
        overlaps.categories.push_back(sweep.geometry_label);
    }
    for (std::size_t k = 0; k < cfg.disorder_list.size(); ++k) {
        BarChart::Group gs, go;
        gs.label = "disorder " + format_number(cfg.disorder_list[k]);
        gs.color = color_palette()[k % color_palette().size()];
        go.label = gs.label;
        go.color = gs.color;
        for (const SweepResult& sweep : sweeps) {
            gs.values.push_back(sweep.rows[k].shift_std_nm);
            go.values.push_back(sweep.rows[k].overlap_mean);
        }
        shifts.groups.push_back(std::move(gs));
        overlaps.groups.push_back(std::move(go));
    }
    write_text_file(fs::path(cfg.out_dir) / "compare.svg",
                    render_bar_panels({shifts, overlaps}));

    write_manifest(cfg, "compare", {"compare.csv", "compare.svg"}, timer.seconds());
    return kExitOk;
}

int dispatch(const std::string& command, const RunConfig& cfg, std::ostream& err) {
    try {
        if (command == "spectrum") return cmd_spectrum(cfg, err);
        if (command == "sweep") return cmd_sweep(cfg, err);
        if (command == "modes") return cmd_modes(cfg, err);
        if (command == "compare") return cmd_compare(cfg, err);
        err << "error: unknown command '" << command << "'\n";
        return kExitConfigError;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const NumericalError& e) {
        err << "numerical diagnostic failure: " << e.what() << '\n';
        return kExitNumericalError;
    }
}

} // namespace spdc::cli
