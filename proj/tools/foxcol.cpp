#include <iostream>
#include <string>
#include <vector>

#include "foxcol/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return foxcol::run(args, std::cout);
}
