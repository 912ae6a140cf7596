#include <iostream>

#include "paracontact/cli.hpp"

int main(int argc, char** argv) {
  return paracontact::run_cli(argc, argv, std::cout, std::cerr);
}
