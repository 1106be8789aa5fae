#include <iostream>

#include "laxbases_cli/run.hpp"

int main(int argc, char** argv) { return laxbases::cli::main_entry(argc, argv, std::cout, std::cerr); }
