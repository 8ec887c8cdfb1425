#pragma once

#include <iosfwd>

namespace behaviorlab {

/// Exit statuses of the command line tool.
enum ExitCode : int { exit_ok = 0, exit_usage = 1, exit_parse = 2, exit_schema = 3 };

/// Runs `behaviorlab` with the given arguments (argv[0] is the program name).
/// Reports go to files; the summary line goes to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace behaviorlab
