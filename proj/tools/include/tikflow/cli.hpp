#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tikflow {

/// Process exit codes of the command line tool.
enum ExitCode : int {
  kExitPass = 0,
  kExitCheckFailure = 1,
  kExitConfigError = 2,
  kExitNumericalFailure = 3,
};

/// Runs the tool on `args` (without the program name), writing reports to
/// `out` and diagnostics to `err`. Returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace tikflow
