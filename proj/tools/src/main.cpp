// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include "levymart_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return levymart::cli::run(args, std::cout, std::cerr);
}
