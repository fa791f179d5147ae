#pragma once

#include <iosfwd>

namespace tilekit::cli {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitContract = 2, kExitFalse = 3 };

// Parses argv, runs one subcommand and returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tilekit::cli
