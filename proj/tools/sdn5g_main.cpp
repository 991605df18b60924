#include <iostream>

#include "sdn5g/cli.hpp"

int main(int argc, char** argv) { return sdn5g::run_cli(argc, argv, std::cout, std::cerr); }
