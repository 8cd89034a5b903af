#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lpa::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kInvariant = 3 };

/// Runs one `lpa` invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lpa::cli
