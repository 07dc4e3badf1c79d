#include <unistd.h>

#include <iostream>
#include <string>
#include <vector>

#include "frobdyn/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return frobdyn::run_cli(args, std::cout, std::cerr, isatty(STDOUT_FILENO) != 0);
}
