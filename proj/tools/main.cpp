#include <iostream>

#include "stoch/cli.hpp"

int main(int argc, char** argv) { return stoch::run_cli(argc, argv, std::cout, std::cerr); }
