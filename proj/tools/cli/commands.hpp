#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace motifx::cli {

// Process exit codes. Kept stable; scripts depend on them.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,          // bad command line
  kInputError = 2,     // unreadable or malformed file
  kValidation = 3,     // invariant or compatibility violation
  kSizeLimit = 4,      // enumeration bound exceeded
  kNumericalFlag = 5,  // report emitted, but a check failed or a score is undefined
};

/// Runs the CLI with argv-style arguments (args[0] is the program name).
/// Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace motifx::cli
