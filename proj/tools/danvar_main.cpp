#include <iostream>

#include "danvar/cli.hpp"

int main(int argc, char** argv) { return danvar::run_cli(argc, argv, std::cout, std::cerr); }
