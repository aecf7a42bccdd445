#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mkcut::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kInternalError = 2,
};

/// Runs one command line (without the program name), e.g.
/// {"solve", "--instance", "G22", "--k", "2"}. Normal output goes to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mkcut::cli
