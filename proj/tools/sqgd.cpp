#include <iostream>

#include "sqgd/commands.hpp"

int main(int argc, char** argv) { return sqgd::cli_main(argc, argv, std::cout, std::cerr); }
