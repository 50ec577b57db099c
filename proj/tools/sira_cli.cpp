#include <iostream>
#include <string>
#include <vector>

#include "sira/harness.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return sira::harness::run_cli(args, std::cout, std::cerr);
}
