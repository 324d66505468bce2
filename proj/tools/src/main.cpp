#include <iostream>

#include "symta/cli.hpp"

int main(int argc, char **argv) {
  return symta::cli::run(argc, argv, std::cout, std::cerr);
}
