#ifndef SPDC_CLI_COMMANDS_HPP
#define SPDC_CLI_COMMANDS_HPP

#include <iosfwd>
#include <string>

#include "spdc/cli/config.hpp"

namespace spdc::cli {

// Exit codes shared by all commands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericalError = 3;

// Each command writes its CSV/SVG outputs plus manifest.json into
// cfg.out_dir and reports warnings on `err`.
int cmd_spectrum(const RunConfig& cfg, std::ostream& err);
int cmd_sweep(const RunConfig& cfg, std::ostream& err);
int cmd_modes(const RunConfig& cfg, std::ostream& err);
int cmd_compare(const RunConfig& cfg, std::ostream& err);

// Run a command by name, mapping exceptions onto exit codes.
int dispatch(const std::string& command, const RunConfig& cfg, std::ostream& err);

// CSV serialization of a sweep, exposed so tests can compare reruns directly.
std::string sweep_csv(const SweepResult& sweep);

} // namespace spdc::cli

#endif
