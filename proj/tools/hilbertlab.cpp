#include "hilbert/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return hilbert::run_cli(argc, argv, std::cout); }
