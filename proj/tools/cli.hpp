#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dixie::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kRange = 3,
  kNoConvergence = 4,
  kTainted = 5,
};

// Runs the dixie tool. `args[0]` is the program name. Reports go to `out`
// unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dixie::cli
