#include <iostream>

#include "segbench/runner/cli.hpp"

int main(int argc, char** argv) { return segbench::run_cli(argc, argv, std::cout, std::cerr); }
