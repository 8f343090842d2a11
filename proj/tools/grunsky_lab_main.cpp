#include <iostream>

#include "grunsky_lab/cli_app.hpp"

int main(int argc, char** argv) {
  return grunsky_lab::run_main(argc, argv, std::cout, std::cerr);
}
