#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace phimap::cli {

/// Process exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kBadInputFile = 2,
  kNumericalFailure = 3,
};

/// Runs the command line `args` (without the program name) and returns the
/// exit code. Reports go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace phimap::cli
