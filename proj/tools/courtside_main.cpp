// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include "courtside/cli.hpp"

int main(int argc, char** argv) { return courtside::run_cli(argc, argv, std::cout, std::cerr); }
