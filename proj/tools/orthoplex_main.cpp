#include <iostream>
#include <string>
#include <vector>

#include "orthoplex/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  orthoplex::cli::CommandResult result = orthoplex::cli::run(args);
  std::cout << result.output;
  std::cerr << result.diagnostics;
  return result.exit_code;
}
