#include <iostream>

#include "sharpfield/cli.hpp"

int main(int argc, char** argv) { return sharpfield::cli::run(argc, argv, std::cout, std::cerr); }
