#pragma once

#include <ostream>

namespace dosc::cli {

enum ExitCode : int {
  kSuccess = 0,
  kValidation = 2,
  kOracleMismatch = 3,
  kNotBracketed = 4,
  kNumerical = 5,
};

/// Entry point of the `dosc` command line. Output files are written
/// directly; everything else goes to `out` / `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace dosc::cli
