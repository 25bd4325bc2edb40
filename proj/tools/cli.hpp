#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wkp::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kSuccess = 0,
  kFailedVerdict = 1,  // the run completed but the mathematical check failed
  kUsageError = 2,     // bad flags, unreadable or inconsistent input
};

/// Entry point of the `wkpres` tool. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wkp::cli
