#include <iostream>

#include "shiftscan/cli.hpp"

int main(int argc, char** argv) { return shiftscan::cli::main(argc, argv, std::cout, std::cerr); }
