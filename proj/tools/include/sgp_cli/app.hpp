#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sgp::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitViolation = 1,
  kExitUsage = 2,
  kExitNumeric = 3,
};

/// Runs the command line in args (args[0] is the program name) and returns
/// the process exit code. Nothing is written outside out, err and --out.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sgp::cli
