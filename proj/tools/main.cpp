#include <iostream>

#include "jetmech/cli.hpp"

int main(int argc, char** argv) {
  return jetmech::cli::run(argc, argv, std::cout, std::cerr);
}
