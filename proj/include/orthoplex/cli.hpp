#pragma once

#include <string>
#include <vector>

namespace orthoplex::cli {

// Exit code plus the two streams: machine-readable output (JSON lines, CSV)
// and human diagnostics. main() forwards them to stdout/stderr.
struct CommandResult {
  int exit_code = 0;
  std::string output;
  std::string diagnostics;
};

// args excludes the program name. Exit codes: 0 success, 1 domain error
// (with a {"error":, "detail":} JSON object on output), 2 usage error.
CommandResult run(const std::vector<std::string>& args);

}  // namespace orthoplex::cli
