#include <iostream>

#include "npi/cli.hpp"

int main(int argc, char** argv) {
  return npi::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
