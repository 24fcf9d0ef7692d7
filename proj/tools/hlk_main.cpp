#include <string>
#include <vector>

#include "hlk/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hlk::cli::run_cli(args);
}
