#include <iostream>
#include <string>
#include <vector>

#include "coarse/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return coarse::cli::run(args, std::cout, std::cerr).exit_code;
}
