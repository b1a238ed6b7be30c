#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mombound::cli {

/// Exit-code contract of the command-line tool.
enum ExitCode : int {
    kSuccess = 0,
    kVerificationFailed = 1,  // verify only: a violation or an oversized gap
    kUsageError = 2,
    kInfeasible = 3,
};

/// Runs the tool with argv-style arguments (args[0] is the program name).
/// The JSON report goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mombound::cli
