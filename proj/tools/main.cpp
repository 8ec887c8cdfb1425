#include <iostream>

#include "behaviorlab/cli.hpp"

int main(int argc, char** argv) { return behaviorlab::run_cli(argc, argv, std::cout, std::cerr); }
