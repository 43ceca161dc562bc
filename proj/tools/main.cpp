#include <string>
#include <vector>

#include "fixlab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return fixlab::run_cli(args);
}
