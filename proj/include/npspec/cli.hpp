#pragma once

#include <ostream>

namespace npspec {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitInput = 2, kExitNumerical = 3, kExitResonance = 4 };

/// Runs the command line (argv[0] is the program name). Results go to `out` unless
/// --out names a file; diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace npspec
