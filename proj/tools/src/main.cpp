#include <iostream>

#include "linsand_cli/cli.hpp"

int main(int argc, char** argv) {
  return linsand::cli::run(argc, argv, std::cout, std::cerr);
}
