#include <iostream>

#include "folab/cli.hpp"

int main(int argc, char** argv) {
  return folab::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
