#include <iostream>

#include "ue/harness/cli.h"

int main(int argc, char** argv) { return ue::harness::run_cli(argc, argv, std::cout, std::cerr); }
