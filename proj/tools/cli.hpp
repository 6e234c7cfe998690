#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace voxrg::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kIoOrFormat = 2,
  kSynthesisFailure = 3,
  kModeArgument = 4,
};

/// Runs the command line `args` (args[0] is the program name). Reports go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace voxrg::cli
