#include <iostream>

#include "relword/cli.hpp"

int main(int argc, char** argv) { return relword::cli::run(argc, argv, std::cout, std::cerr); }
