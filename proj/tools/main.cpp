#include <iostream>

#include "iontrotter/cli.hpp"

int main(int argc, char** argv) { return iontrotter::run_cli(argc, argv, std::cout, std::cerr); }
