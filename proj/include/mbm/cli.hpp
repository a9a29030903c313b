#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mbm {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitDomain = 2,
  kExitConvergence = 3,
};

/// Runs one subcommand. `args` excludes the program name. Results go to `out`
/// (or the file named by --output), diagnostics to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mbm
