#include <iostream>
#include <string>
#include <vector>

#include "copcone/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return copcone::run_cli(args, std::cout, std::cerr);
}
