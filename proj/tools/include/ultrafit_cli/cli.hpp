#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ultrafit::cli {

/// Exit statuses of the command-line tool.
enum ExitCode : int {
  kSuccess = 0,
  kNotUltrametric = 1,  // `check` verdict, not an error
  kValidationError = 2,
  kNumericalError = 3,
};

/// Runs one invocation. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ultrafit::cli
