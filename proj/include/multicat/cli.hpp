#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace multicat::cli {

/// Exit codes of the multicat command.
enum ExitCode : int { kOk = 0, kDomainError = 1, kUsageError = 2 };

/// Runs one invocation; `args` excludes the program name. Results go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace multicat::cli
