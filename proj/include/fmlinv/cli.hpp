#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fmlinv {

enum ExitCode : int {
  kExitOk = 0,
  kExitDomainFailure = 1,
  kExitUsage = 2,
  kExitOracleMismatch = 3,
};

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fmlinv
