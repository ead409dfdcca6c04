#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace recur {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitHypothesis = 1, kExitInput = 2, kExitUndecided = 3 };

/// Runs one invocation; `args` excludes the program name. JSON results go to
/// `out` (or the --out file), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace recur
