// Copyright 2026 The alpharing Authors
// SPDX-License-Identifier: Apache-2.0
//! \file profiles.hpp
//! Named analytic q^theta/r profiles for configs and tests.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "state.hpp"

namespace alpharing
{
using ProfileParams = std::map<std::string, double>;

/*!
 * Build a named profile. Known names and parameters (defaults in brackets):
 *
 *  - "gaussian_ring": amplitude [1], radius [1], sigma [0.1], z0 [0]
 *  - "gaussian_ring_pair": amplitude [1], radius1 [1], z1 [0], radius2 [1],
 *    z2 [0.5], sigma [0.1]
 *  - "zero": no parameters
 *
 * Throws std::invalid_argument for an unknown name or parameter.
 */
Profile make_profile(const std::string& name, const ProfileParams& params);

//! Parameter names with defaults filled in.
ProfileParams profile_defaults(const std::string& name);

std::vector<std::string> profile_names();

} // namespace alpharing
