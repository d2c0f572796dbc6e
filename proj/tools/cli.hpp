#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tsk::cli {

enum ExitCode : int {
  kOk = 0,
  kInvalid = 1,
  kInfeasible = 2,
  kDisagreement = 3,
  kRecomposition = 4,
};

// args excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace tsk::cli
