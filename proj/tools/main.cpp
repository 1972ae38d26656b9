#include "toric/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return toric::cli::run(argc, argv, std::cout, std::cerr); }
