#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace svloja::cli {

enum ExitCode : int {
  exit_pass = 0,
  exit_fail = 1,
  exit_inconclusive = 2,
  exit_precondition = 3,
  exit_usage = 4,
};

// args excludes the program name. Reports go to out (or --out), diagnostics
// to err.
int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err);
int run(int argc, char **argv);

} // namespace svloja::cli
