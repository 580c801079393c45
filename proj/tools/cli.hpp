#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pvn::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 1,
  kConfigError = 2,
  kNumericalFailure = 3,
  kGateFailure = 4,
};

/// Runs `pvn-bench` with argv-style arguments (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pvn::cli
