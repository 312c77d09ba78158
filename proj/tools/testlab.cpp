#include <iostream>
#include <string>
#include <vector>

#include "testlab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return testlab::run_cli(args, std::cout, std::cerr);
}
