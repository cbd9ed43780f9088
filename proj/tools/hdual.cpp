#include <iostream>
#include <string>
#include <vector>

#include "hdual/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hdual::cli::run(args, std::cout, std::cerr);
}
