#include <iostream>

#include "rigtfd/cli.hpp"

int main(int argc, char** argv) {
  return rigtfd::cli::run(argc, argv, std::cin, std::cout, std::cerr);
}
