#include <iostream>
#include <string>
#include <vector>

#include "botwatch/cli.h"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return botwatch::cli::run(args, std::cout, std::cerr);
}
