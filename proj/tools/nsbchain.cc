#include <iostream>

#include "nsb/cli/commands.h"

int main(int argc, char** argv) {
  return nsb::cli::run_cli(argc, argv, std::cout, std::cerr);
}
