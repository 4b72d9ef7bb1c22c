#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hs::cli {

/// Exit codes of `hs`.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kValidation = 2,
  kNumerical = 3,
};

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hs::cli
