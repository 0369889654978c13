#include <iostream>

#include "usc/cli.hpp"

int main(int argc, char** argv) { return usc::main_entry(argc, argv, std::cout, std::cerr); }
