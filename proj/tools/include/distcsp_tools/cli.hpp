#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace distcsp::cli {

enum ExitCode : int {
    kSuccess = 0,
    kUnsat = 1,
    kUnknown = 2,
    kInputError = 3,
    kInternalError = 4,
};

/// Runs one command line (args[0] is the program name). Reports go to
/// `out`, diagnostics and traces to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace distcsp::cli
