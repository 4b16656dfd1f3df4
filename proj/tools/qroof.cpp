#include <iostream>

#include "qroof/cli.hpp"

int main(int argc, char** argv) { return qroof::run_cli(argc, argv, std::cout, std::cerr); }
