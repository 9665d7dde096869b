#include <iostream>
#include <string>
#include <vector>

#include "bootperc/cli.hpp"

int main(int argc, char** argv) {
  return bootperc::run_command(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
