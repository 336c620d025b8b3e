#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sumset::cli {

/// Runs one command; `args` excludes the program name. Returns the exit code:
/// 0 success, 1 bad usage or input, 2 precondition, 3 budget exhausted,
/// 4 internal invariant violation.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sumset::cli
