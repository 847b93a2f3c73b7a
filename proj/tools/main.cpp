#include <iostream>

#include "medianqs/cli.hpp"

int main(int argc, char** argv) { return medianqs::run_cli(argc, argv, std::cout, std::cerr); }
