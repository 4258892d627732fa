#pragma once

#include <ostream>

namespace danvar {

enum ExitCode : int {
  kExitVerified = 0,
  kExitNegative = 1,
  kExitInconclusive = 2,
  kExitInputError = 3,
};

/// Entry point of the danvar command line tool. Reports go to `out`,
/// machine-readable diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace danvar
