#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace compstruct::cli {

enum ExitCode : int {
    kOk = 0,
    kVerificationFailed = 1,
    kUsage = 2,
    kFuelExhausted = 3,
};

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics and usage text to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace compstruct::cli
