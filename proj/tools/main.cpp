#include <iostream>

#include "ghb/cli.hpp"

int main(int argc, char** argv) { return ghb::cli::main(argc, argv, std::cout, std::cerr); }
