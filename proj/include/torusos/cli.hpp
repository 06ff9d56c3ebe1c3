#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace torusos::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kChecksFailed = 1,
  kUsage = 2,
  kParseError = 3,
  kDomainError = 4,
  kInconsistentOracle = 5,
  kInternalError = 6,
};

/// Runs `torusos <command> <file> [flags]`; `args` excludes the program name.
/// The report goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace torusos::cli
