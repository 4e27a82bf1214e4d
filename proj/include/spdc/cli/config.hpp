#ifndef SPDC_CLI_CONFIG_HPP
#define SPDC_CLI_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "spdc/ensemble.hpp"
#include "spdc/supermodes.hpp"

namespace spdc::cli {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Resolved run configuration: the key-value config file plus any command-line
// overrides. All module invariants are revalidated at parse time.
struct RunConfig {
    LatticeSpec spec;
    std::vector<Geometry> geometries;  // compare command
    std::vector<double> disorder_list; // sweep/compare rows
    double disorder = 0.0;             // spectrum/modes
    int realizations = 300;
    std::uint64_t master_seed = 1;
    std::uint64_t realization_index = 0; // modes command
    double grid_min = 0.0, grid_max = 0.0;
    int grid_points = 481;
    bool grid_explicit = false;
    WavelengthMap map;
    SolverKind solver = SolverKind::ClosedForm;
    int threads = 1;
    std::string out_dir = ".";
    double diagonal_disorder = 0.0;
    FieldKind modes_field = FieldKind::Spdc;

    SpectrumGrid grid() const;
    EnsembleOptions ensemble_options() const;
};

// Parse `key = value` lines; '#' starts a comment; unknown keys are rejected.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::filesystem::path& path);

// Canonical echo of a resolved config; feeding it back through the parser
// reproduces the run exactly.
std::string canonical_config_text(const RunConfig& cfg);

} // namespace spdc::cli

#endif
