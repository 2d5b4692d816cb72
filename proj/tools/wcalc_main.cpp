#include <iostream>
#include <string>
#include <vector>

#include "wcalc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return wcalc::run_cli(args, std::cout, std::cerr);
}
