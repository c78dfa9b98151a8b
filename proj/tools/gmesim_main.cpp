#include "gmesim/commands.hpp"

#include <iostream>

int main(int argc, char** argv) { return gmesim::run_cli(argc, argv, std::cout, std::cerr); }
