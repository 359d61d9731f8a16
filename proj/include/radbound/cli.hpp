#pragma once

#include <iosfwd>

namespace radbound::cli {

enum ExitCode : int {
    kOk = 0,
    kInputError = 2,
    kDegenerateBudget = 3,
    kModeMismatch = 4,
};

/// Runs the `radbound` command line; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace radbound::cli
