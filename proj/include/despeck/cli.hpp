#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace despeck::cli {

/// Runs the command line `args` (without the program name). Machine-readable
/// results go to `out` as JSON lines; diagnostics and human summaries go to
/// `err`. Returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace despeck::cli
