#include <iostream>
#include <string>
#include <vector>

#include "phimap/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return phimap::cli::run_cli(args, std::cout, std::cerr);
}
