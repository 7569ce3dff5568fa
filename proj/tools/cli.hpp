#pragma once

#include <iosfwd>

namespace riparian::cli {

enum ExitCode : int {
    kSuccess = 0,
    kInputError = 1,
    // An axiom violation was found, or a case-study figure missed its tolerance.
    kCheckFailed = 2,
};

/// Entry point of the `riparian` tool. Writes results to `out` and
/// diagnostics to `err`; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace riparian::cli
