#include <iostream>
#include <string>
#include <vector>

#include <sqrw/cli.hpp>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return sqrw::cli::run_command(args, std::cout, std::cerr);
}
