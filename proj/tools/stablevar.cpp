#include <iostream>

#include "stablevar/cli.hpp"

int main(int argc, char** argv) { return stablevar::cli::run(argc, argv, std::cout, std::cerr); }
