#include "vvaf/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return vvaf::cli::run(argc, argv, std::cout, std::cerr); }
