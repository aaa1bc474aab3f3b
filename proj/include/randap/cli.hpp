#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace randap {

/// Exit codes of the command-line front end.
enum ExitCode : int { kSuccess = 0, kResourceError = 1, kInputError = 2 };

/// Runs the CLI with `args` (args[0] is the program name). CSV goes to `out` unless --out is
/// given; diagnostics and timing go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace randap
