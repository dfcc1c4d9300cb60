#include <iostream>

#include "qforms/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qforms::cli::run(args, std::cout);
}
