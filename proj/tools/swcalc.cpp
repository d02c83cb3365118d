#include <iostream>
#include <string>
#include <vector>

#include "swcalc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return swcalc::run_command(args, std::cout, std::cerr);
}
