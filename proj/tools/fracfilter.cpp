#include <iostream>

#include "fracfilter/cli.hpp"

int main(int argc, char** argv) { return fracfilter::run_cli(argc, argv, std::cout, std::cerr); }
