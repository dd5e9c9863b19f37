#pragma once

#include <iosfwd>

namespace pwl {

/// Exit codes of the command-line front end.
enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kRefused = 3 };

/// Runs the pwlc command line. Summaries go to `out`; diagnostics and
/// failure reports (JSON) go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pwl
