#include <iostream>

#include "dosc/cli.hpp"

int main(int argc, char** argv) {
  return dosc::cli::run(argc, argv, std::cout, std::cerr);
}
