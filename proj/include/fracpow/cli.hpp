#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace fracpow::cli {

enum ExitCode : int {
  kOk = 0,
  kValidationError = 1,
  kCheckFailed = 2,
  kBudgetExhausted = 3,
};

/// Runs one subcommand. args excludes the program name. Results go to out
/// (or the --output file); one-line diagnostics go to err.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace fracpow::cli
