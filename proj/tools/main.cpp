#include <iostream>

#include "relalloc/cli.hpp"

int main(int argc, char** argv) {
  return relalloc::cli::run(argc, argv, std::cout, std::cerr);
}
