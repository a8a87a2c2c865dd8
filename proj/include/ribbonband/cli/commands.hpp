#pragma once

#include <iosfwd>

#include "ribbonband/cli/config.hpp"

namespace ribbonband::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kConfigError = 2,
  kNumericalError = 3,
  kCriterionViolation = 4,
};

// Each command writes data to `out` and diagnostics to `err`, and returns
// an exit code. Errors thrown by the library are mapped by run_command.

int cmd_bands(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_flatband(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_asymptotics(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Runs `command` ("bands", "flatband", "asymptotics", "verify") and maps
/// exceptions to exit codes.
int run_command(const std::string& command, const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full command line: subcommand plus flags. Opens --out when given.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace ribbonband::cli
