#include <iostream>

#include "dnls/cli.hpp"

int main(int argc, char** argv) { return dnls::run_cli(argc, argv, std::cout, std::cerr); }
