#include <iostream>

#include "quantdiv/cli.hpp"

int main(int argc, char** argv) { return quantdiv::cli::run(argc, argv, std::cout, std::cerr); }
