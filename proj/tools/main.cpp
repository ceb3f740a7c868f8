// Thin entry point for the subw command-line tool; all logic lives in
// subw::cli::run so the tests can drive the same surface in-process.

#include <iostream>
#include <string>
#include <vector>

#include "subw/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return subw::cli::run(args, std::cout, std::cerr);
}
