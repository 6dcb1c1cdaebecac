#include <iostream>
#include <string>
#include <vector>

#include "harsanyi/cli.hpp"

int main(int argc, char** argv) {
  return harsanyi::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
