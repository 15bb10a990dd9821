#include <iostream>
#include <string>
#include <vector>

#include "hmzf/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hmzf::cli::run(std::move(args), std::cout, std::cerr);
}
