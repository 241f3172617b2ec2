#pragma once

#include <iosfwd>

namespace dnls {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitAssertion = 2, kExitNumeric = 3 };

/// Parses the arguments, runs one subcommand and writes its artifacts.  A one-line JSON
/// summary goes to `out`; failures print a JSON error record to `err` and return the exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dnls
