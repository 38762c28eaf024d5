#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fahp::cli {

enum ExitCode : int {
  kOk = 0,
  kInvalid = 1,  // validation or consistency failure
  kUsage = 2,
  kIo = 3,
};

/// Runs one `fahp` invocation. `args` excludes the program name. Data goes
/// to `out`, diagnostics to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace fahp::cli
