// Copyright 2026 The alpharing Authors
// SPDX-License-Identifier: Apache-2.0
#include <iostream>
#include <string>
#include <vector>

#include "alpharing/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return alpharing::cli_main(args, std::cout, std::cerr);
}
