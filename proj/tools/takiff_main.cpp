#include <iostream>
#include <vector>

#include "takiff/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return takiff::cli_dispatch(args, std::cout, std::cerr);
}
