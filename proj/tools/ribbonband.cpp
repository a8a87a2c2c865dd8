#include <iostream>

#include "ribbonband/cli/commands.hpp"

int main(int argc, char** argv) { return ribbonband::cli::run_cli(argc, argv, std::cout, std::cerr); }
