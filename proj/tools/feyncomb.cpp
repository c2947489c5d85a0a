#include <iostream>

#include "feyncomb/cli.hpp"

int main(int argc, char** argv) {
  const feyncomb::CliResult r = feyncomb::run_cli(std::vector<std::string>(argv + 1, argv + argc));
  std::cout << r.out;
  std::cerr << r.err;
  return r.exit_code;
}
