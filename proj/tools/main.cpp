#include <string>
#include <vector>

#include "qerg/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return qerg::run_cli(args);
}
