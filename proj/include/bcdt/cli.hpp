#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bcdt {

enum ExitCode : int { kExitOk = 0, kExitUserError = 1, kExitInternalError = 2 };

/// Runs the command line tool. `args` excludes the program name. Output goes
/// to `out`, diagnostics to `err`; the verbosity follows BCDT_LOG_LEVEL
/// (error, warn, info, debug; default warn).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace bcdt
