#include <iostream>

#include "qnetcap/cli.hpp"

int main(int argc, char** argv) { return qnetcap::cli::run(argc, argv, std::cout, std::cerr); }
