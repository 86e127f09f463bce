#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace casimir::cli {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidationFailed = 1;
inline constexpr int kExitBadInput = 2;
inline constexpr int kExitNotConverged = 3;

// Runs the tool with `args` (without the program name). Data goes to `out`
// unless --out names a file; diagnostics and the run summary go to `err`.
int run_command_line(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace casimir::cli
