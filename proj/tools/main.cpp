#include <iostream>

#include "herald/cli.hpp"

int main(int argc, char** argv) { return herald::run_cli(argc, argv, std::cout, std::cerr); }
