#pragma once

#include <iosfwd>

namespace helix::cli {

enum ExitCode : int { kSuccess = 0, kNumericalFailure = 1, kUsageError = 2 };

/// Entry point shared by the executable and the tests. Output goes to `out` unless --output
/// names a file; diagnostics go to `err`.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace helix::cli
