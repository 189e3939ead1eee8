#include <iostream>

#include "erk/commands.hpp"

int main(int argc, char** argv) { return erk::run_cli(argc, argv, std::cout, std::cerr); }
