#include <iostream>

#include "adsyn/frontend.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return adsyn::frontend::run_cli(args, std::cout, std::cerr);
}
