#include "pb/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return pb::cli::dispatch(argc, argv, std::cout, std::cerr);
}
