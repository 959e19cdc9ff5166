#include <iostream>

#include "psv/cli.hpp"

int main(int argc, char** argv) { return psv::run_subcommand(argc, argv, std::cout, std::cerr); }
