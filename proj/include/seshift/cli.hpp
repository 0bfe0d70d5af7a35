#pragma once
#include <iosfwd>
#include <string>
#include <vector>

namespace seshift::cli {

enum ExitCode : int {
  ok = 0,
  validation = 2,
  non_convergence = 3,
  inconsistent = 4,
};

/// Runs the command line `args` (without the program name). Reports go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err);

} // namespace seshift::cli
