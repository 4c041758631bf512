#include <iostream>

#include "gmdkp/cli.hpp"

int main(int argc, char** argv) { return gmdkp::cli::run(argc, argv, std::cout, std::cerr); }
