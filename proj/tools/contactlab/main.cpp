#include <iostream>

#include "contactlab/cli.hpp"

int main(int argc, char** argv) { return contactlab::cli::run_cli(argc, argv, std::cout, std::cerr); }
