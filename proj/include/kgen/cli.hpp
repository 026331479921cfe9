#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kgen::cli {

inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int { kSuccess = 0, kInputError = 1, kNotConverged = 2 };

// Runs one command line (without the program name). Reports and tables go to
// out unless an output path is given; diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kgen::cli
