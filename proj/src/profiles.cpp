// Copyright 2026 The alpharing Authors
// SPDX-License-Identifier: Apache-2.0
#include "alpharing/profiles.hpp"

#include <cmath>
#include <stdexcept>

namespace alpharing
{
ProfileParams profile_defaults(const std::string& name)
{
    if (name == "gaussian_ring")
        return {{"amplitude", 1.0}, {"radius", 1.0}, {"sigma", 0.1}, {"z0", 0.0}};
    if (name == "gaussian_ring_pair")
        return {{"amplitude", 1.0},
                {"radius1", 1.0},
                {"z1", 0.0},
                {"radius2", 1.0},
                {"z2", 0.5},
                {"sigma", 0.1}};
    if (name == "zero")
        return {};
    throw std::invalid_argument("unknown profile '" + name + "'");
}

std::vector<std::string> profile_names()
{
    return {"gaussian_ring", "gaussian_ring_pair", "zero"};
}

Profile make_profile(const std::string& name, const ProfileParams& params)
{
    ProfileParams p = profile_defaults(name);
    for (const auto& [key, value] : params)
    {
        if (!p.count(key))
            throw std::invalid_argument("profile '" + name + "': unknown parameter '"
                                        + key + "'");
        if (!std::isfinite(value))
            throw std::invalid_argument("profile '" + name + "': parameter '" + key
                                        + "' must be finite");
        p[key] = value;
    }

    if (name == "zero")
        return [](double, double) { return 0.0; };

    const double sigma = p.at("sigma");
    if (!(sigma > 0))
        throw std::invalid_argument("profile '" + name + "': sigma > 0 required");
    const double a = p.at("amplitude");
    auto blob = [a, s2 = sigma * sigma](double r, double z, double rc, double zc) {
        return a * std::exp(-((r - rc) * (r - rc) + (z - zc) * (z - zc)) / s2);
    };

    if (name == "gaussian_ring")
        return [blob, R = p.at("radius"), z0 = p.at("z0")](double r, double z) {
            return blob(r, z, R, z0);
        };
    return [blob,
            R1 = p.at("radius1"),
            z1 = p.at("z1"),
            R2 = p.at("radius2"),
            z2 = p.at("z2")](double r, double z) {
        return blob(r, z, R1, z1) + blob(r, z, R2, z2);
    };
}

} // namespace alpharing
