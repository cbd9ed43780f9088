#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hdual::cli {

/// Exit codes shared by every command.
enum ExitCode : int { kOk = 0, kDomainFailure = 1, kUsage = 2 };

/// Runs the command line `args` (without the program name). All normal
/// output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Worker threads for scans: HDUAL_THREADS if set and positive, else 1.
unsigned thread_count();

}  // namespace hdual::cli
