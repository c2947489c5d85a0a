#pragma once

// Command-line front end, callable in-process.

#include <string>
#include <vector>

namespace feyncomb {

struct CliResult {
  int exit_code = 0;  // 0 ok, 1 check failure, 2 input or precondition error
  std::string out;
  std::string err;
};

/// args excludes the program name.
CliResult run_cli(const std::vector<std::string>& args);

}  // namespace feyncomb
