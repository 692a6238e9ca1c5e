#include <iostream>

#include "syzkit/cli.hpp"

int main(int argc, char** argv) { return syzkit::cli::run(argc, argv, std::cout, std::cerr); }
