#include <iostream>

#include "theta4/cli.hpp"

int main(int argc, char** argv) { return theta4::cli::run(argc, argv, std::cout, std::cerr); }
