#include "rpm_cli/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return rpm::cli::run(argc, argv, std::cout, std::cerr); }
