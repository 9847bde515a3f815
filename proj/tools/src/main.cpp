#include <iostream>

#include "ihalton/cli.hpp"

int main(int argc, char** argv) { return ihalton::cli::run(argc, argv, std::cout, std::cerr); }
