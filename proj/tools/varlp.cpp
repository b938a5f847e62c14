#include <iostream>
#include <string>
#include <vector>

#include "varlp/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return varlp::run_cli(args, std::cout, std::cerr);
}
