// Copyright 2026 The alpharing Authors
// SPDX-License-Identifier: Apache-2.0
//! \file cli.hpp
//! Command-line front end.
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace alpharing
{
/*!
 * Run one subcommand. `args` excludes the program name. Returns 0 on
 * success, 1 on a runtime or verification failure (one "error: ..." line
 * on `err`), 2 on a usage error.
 */
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace alpharing
