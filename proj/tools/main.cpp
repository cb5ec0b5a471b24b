#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return racelab::cli::run(argc, argv, std::cout, std::cerr); }
