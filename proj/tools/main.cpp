#include <iostream>

#include "equimax/cli.hpp"

int main(int argc, char** argv) {
  return equimax::cli::run(argc, argv, std::cout, std::cerr);
}
