#include <iostream>

#include "rotorlog/cli.hpp"

int main(int argc, char** argv) { return rotorlog::cli::run(argc, argv, std::cout, std::cerr); }
