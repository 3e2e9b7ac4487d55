#include <iostream>

#include "sigtaylor/cli.hpp"

int main(int argc, char** argv) { return sigtaylor::run(argc, argv, std::cout, std::cerr); }
