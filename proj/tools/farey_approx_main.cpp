#include "farey_approx/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return farey_approx::cli::run(argc, argv, std::cout, std::cerr); }
