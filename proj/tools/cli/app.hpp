#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dfcast::cli {

enum ExitCode : int { kOk = 0, kRuntimeFailure = 1, kUsageError = 2 };

/// Parses the command line and runs one command. Never throws; failures are
/// reported on `err` and mapped to an exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace dfcast::cli
