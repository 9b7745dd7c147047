#include <string>
#include <vector>

#include "droneplan/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return droneplan::run_cli(args);
}
