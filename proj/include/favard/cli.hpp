#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace favard::cli {

inline constexpr const char* kVersion = "favard-lab 0.1.0";

/// Exit codes.
enum ExitCode : int {
  kOk = 0,
  kComputationFailure = 1,  // size cap, non-convergence
  kUsageError = 2,
  kClaimFailure = 3,  // certificate / convexity / tiling check failed
};

/// Runs one subcommand. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace favard::cli
