#pragma once

#include <string>
#include <vector>

namespace deristab::cli {

struct CommandResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

/// Runs one command line (without the program name). Exit code 0 covers
/// every answer, including `false` and `inconclusive`; 1 means bad input,
/// 2 a usage error, 3 an internal consistency failure.
CommandResult run(const std::vector<std::string>& args);

/// Splits a comma-separated list, trimming whitespace around items.
std::vector<std::string> split_list(const std::string& text);

}  // namespace deristab::cli
