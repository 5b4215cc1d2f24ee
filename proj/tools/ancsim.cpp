#include <iostream>

#include "ancsim/cli/commands.hpp"

int main(int argc, char** argv) { return ancsim::cli::main_entry(argc, argv, std::cout, std::cerr); }
