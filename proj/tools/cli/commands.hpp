#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fbm::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kDegenerate = 2,
};

/// Entry point of the `fbm` tool. argv[0] is the program name.
/// Subcommands: fit, simulate, study, bv-approx, asymptotics.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload for tests: args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Reads newline-separated decimals; blank lines and lines starting with '#'
/// are skipped. Throws fbm::ArgumentError naming the offending line.
std::vector<double> read_series(const std::string& path);

}  // namespace fbm::cli
