#include <iostream>
#include <string>
#include <vector>

#include "jobgraph/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return jobgraph::execute_command(args, std::cout, std::cerr);
}
