#pragma once

#include <ostream>

namespace contextant::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kLimit = 3 };

/// Entry point of the `contextant` tool; writes results to `out` and
/// diagnostics to `err`, returns the process exit code.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace contextant::cli
