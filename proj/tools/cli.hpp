#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pbenc::cli {

enum ExitCode : int {
    kSuccess = 0,
    kUsage = 1,
    kIoError = 2,
    kVerificationFailed = 3,
    kSat = 10,
    kUnsat = 20,
};

/// Runs the `pbenc` front-end on `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pbenc::cli
