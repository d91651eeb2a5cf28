#include <iostream>

#include "exk/cli.hpp"

int main(int argc, char** argv) { return exk::cli::run(argc, argv, std::cout, std::cerr); }
