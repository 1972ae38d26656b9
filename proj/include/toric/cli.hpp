#pragma once

#include <ostream>

namespace toric::cli {

enum ExitCode : int {
    kOk = 0,
    kMathFailure = 1,
    kUsage = 2,
    kInconsistent = 3,
};

/// Subcommands: validate, cones, coh, thomsen, diagonal, audit, support, e1, split.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace toric::cli
