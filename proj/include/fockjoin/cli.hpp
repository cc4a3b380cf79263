#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fockjoin {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitScheme = 2 };

/// Runs the `fockjoin` command line. `args` excludes the program name.
/// Reports go to the --report/--out file when given, else to `out`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace fockjoin
