#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bernstein {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitBadInput = 1,
  kExitPrecondition = 2,
  kExitBudget = 3,
  kExitVerificationFailed = 4,
};

/// Runs the command-line tool. `args` excludes the program name. Normal
/// output goes to `out` unless --out names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace bernstein
