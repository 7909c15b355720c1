#include <iostream>

#include "idemsum/cli.hpp"

int main(int argc, char** argv) { return idemsum::cli::run(argc, argv, std::cout, std::cerr); }
