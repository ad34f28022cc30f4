#include <iostream>

#include "ftddp/cli.hpp"

int main(int argc, char** argv) {
  return ftddp::run_cli(argc, argv, std::cout, std::cerr);
}
