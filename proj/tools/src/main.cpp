#include <iostream>

#include "qmpsig/cli.hpp"

int main(int argc, char** argv) {
  return qmpsig::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
