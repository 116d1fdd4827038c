#include <iostream>
#include <string>
#include <vector>

#include "moodfilm/cli.hpp"

int main(int argc, char** argv) {
  return moodfilm::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
