#include <iostream>
#include <string>
#include <vector>

#include "endscope/io.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return endscope::run_command(args, std::cout, std::cerr);
}
