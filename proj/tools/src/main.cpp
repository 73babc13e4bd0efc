#include <iostream>
#include <string>
#include <vector>

#include "freeiso/cli/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  freeiso::cli::RunResult r = freeiso::cli::run(args);
  std::cout << r.out;
  std::cerr << r.err;
  return r.exit_code;
}
