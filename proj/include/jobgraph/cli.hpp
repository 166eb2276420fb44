#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace jobgraph {

/// Exit codes: 0 success, 1 usage/config, 2 input/format, 3 numeric/consistency.
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitInput = 2, kExitNumeric = 3 };

/// Runs one CLI invocation; `args` excludes the program name.
int execute_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace jobgraph
