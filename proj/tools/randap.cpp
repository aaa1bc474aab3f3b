#include <iostream>

#include "randap/cli.hpp"

int main(int argc, char** argv) {
  return randap::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
