#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace geocensus::cli {

enum ExitCode : int {
    kSuccess = 0,
    kInternal = 1,
    kDomain = 2,
    kExhausted = 3,
};

/// Runs one CLI invocation. `args` excludes the program name. The report goes
/// to `out`; diagnostics go to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace geocensus::cli
