#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hodgeworks::cli {

enum ExitCode { kPass = 0, kCheckFailed = 1, kInputError = 2 };

/// Runs one command; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hodgeworks::cli
