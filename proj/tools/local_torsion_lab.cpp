#include <iostream>

#include "ltlab/cli_runner.hpp"

int main(int argc, char** argv) { return ltlab::run_cli(argc, argv, std::cout, std::cerr); }
