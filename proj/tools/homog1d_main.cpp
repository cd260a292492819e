#include <iostream>
#include <string>
#include <vector>

#include "homog1d/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return homog1d::run_command(args, std::cout, std::cerr);
}
