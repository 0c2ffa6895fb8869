#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sgp4x::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kParseError = 2,
  kRuntimeFailure = 3,
};

/// Runs the command line `args` (program name excluded). Machine-readable
/// output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// START:STOP:STEP in minutes, STOP included when it falls on the grid.
std::vector<double> parse_time_range(const std::string& spec);

/// Comma-separated minutes.
std::vector<double> parse_time_list(const std::string& spec);

}  // namespace sgp4x::cli
