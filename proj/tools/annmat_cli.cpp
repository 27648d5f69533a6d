#include <iostream>
#include <string>
#include <vector>

#include "annmat/run.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return annmat::run(args, std::cout, std::cerr);
}
