#include <iostream>
#include <string>
#include <vector>

#include "leavitt/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  auto                     r = leavitt::cli::run(std::move(args));
  std::cout << r.out;
  std::cerr << r.err;
  return r.code;
}
