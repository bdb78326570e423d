#include <iostream>

#include "qseries/cli.hpp"

int main(int argc, char** argv) { return qs::run(argc, argv, std::cout, std::cerr); }
