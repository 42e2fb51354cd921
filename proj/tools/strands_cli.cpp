#include <iostream>
#include <string>
#include <vector>

#include "strands/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return strands::cli::run(args, std::cout, std::cerr);
}
