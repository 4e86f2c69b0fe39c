#include <iostream>

#include "gpsim/cli.hpp"

int main(int argc, char** argv) { return gpsim::cli::run(argc, argv, std::cout, std::cerr); }
