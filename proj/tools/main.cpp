#include <iostream>

#include "frep/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return frep::run_cli(args, std::cout, std::cerr);
}
