#include <iostream>

#include "egzlab/cli.hpp"

int main(int argc, char** argv) { return egz::cli::run(argc, argv, std::cout, std::cerr); }
