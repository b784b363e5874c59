#include <iostream>

#include "pwla/cli.hpp"

int main(int argc, char** argv) { return pwla::cli::main(argc, argv, std::cout, std::cerr); }
