#include <iostream>

#include "splitmap/cli.hpp"

int main(int argc, char** argv) { return splitmap::cli::run(argc, argv, std::cout, std::cerr); }
