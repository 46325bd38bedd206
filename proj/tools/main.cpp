#include <iostream>

#include "influence_cli.hpp"

int main(int argc, char** argv) { return influence::cli::run(argc, argv, std::cout, std::cerr); }
