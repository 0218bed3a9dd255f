#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return trustclust::cli::run(argc, argv, std::cout, std::cerr); }
