#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "spdc/cli/commands.hpp"
#include "spdc/version.hpp"

namespace {

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
    std::optional<std::string> out;
    std::optional<std::string> solver;
};

void add_common(CLI::App* sub, std::string& config_path, Overrides& ov) {
    sub->add_option("config", config_path, "key-value config file")->required();
    sub->add_option("--seed", ov.seed, "override master_seed");
    sub->add_option("--threads", ov.threads, "override worker thread count");
    sub->add_option("--out", ov.out, "override output directory");
    sub->add_option("--solver", ov.solver, "override solver (closed|ode)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(spdc::kToolName) +
                 " — SPDC photon-pair spectra in disordered waveguide arrays"};
    app.set_version_flag("--version", spdc::kToolVersion);
    app.require_subcommand(1);

    std::string config_path;
    Overrides ov;
    for (const char* name : {"spectrum", "sweep", "modes", "compare"}) {
        CLI::App* sub = app.add_subcommand(name);
        add_common(sub, config_path, ov);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : spdc::cli::kExitConfigError;
    }

    try {
        spdc::cli::RunConfig cfg = spdc::cli::parse_config_file(config_path);
        if (ov.seed) cfg.master_seed = *ov.seed;
        if (ov.threads) {
            if (*ov.threads < 1) throw spdc::cli::ConfigError("threads must be >= 1");
            cfg.threads = *ov.threads;
        }
        if (ov.out) cfg.out_dir = *ov.out;
        if (ov.solver) cfg.solver = spdc::solver_from_string(*ov.solver);

        const std::string command = app.get_subcommands().front()->get_name();
        return spdc::cli::dispatch(command, cfg, std::cerr);
    } catch (const spdc::cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return spdc::cli::kExitConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return spdc::cli::kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
