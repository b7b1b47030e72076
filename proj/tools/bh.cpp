#include <iostream>

#include "bh/cli.hpp"

int main(int argc, char** argv) { return bh::run(argc, argv, std::cout, std::cerr); }
