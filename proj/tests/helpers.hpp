// Copyright 2026 The alpharing Authors
// SPDX-License-Identifier: Apache-2.0
//! \file helpers.hpp
//! Cloud builders shared by the unit and acceptance tests.
#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "alpharing/profiles.hpp"
#include "alpharing/state.hpp"

namespace alpharing::test
{
inline std::filesystem::path source_dir() { return ALPHARING_SOURCE_DIR; }

//! Fresh scratch directory under the build tree.
inline std::filesystem::path scratch(const std::string& name)
{
    const auto p = std::filesystem::path(ALPHARING_TEST_TMP) / name;
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

//! Gaussian-core ring sampled on an n x n grid.
inline ParticleCloud gaussian_ring_cloud(double alpha,
                                         int n,
                                         int n_theta,
                                         double amplitude = 1.0,
                                         double radius = 1.0,
                                         double sigma = 0.1)
{
    GridSpec grid;
    grid.box = {radius - 6 * sigma, radius + 6 * sigma, -6 * sigma, 6 * sigma};
    grid.nr = n;
    grid.nz = n;
    grid.n_theta = n_theta;
    const auto profile = make_profile(
        "gaussian_ring", {{"amplitude", amplitude}, {"radius", radius}, {"sigma", sigma}});
    return init_from_profile(profile, grid, Alpha(alpha));
}

//! Rings at random meridional positions with random signed weights.
inline ParticleCloud random_cloud(std::size_t count,
                                  double alpha,
                                  int n_theta,
                                  unsigned seed,
                                  double r_lo = 0.3,
                                  double r_hi = 1.5,
                                  double z_half = 0.6)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ur(r_lo, r_hi), uz(-z_half, z_half),
        ug(-1.0, 1.0), uv(0.5e-3, 2e-3);
    std::vector<VortexRing> rings(count);
    for (auto& ring : rings)
    {
        ring.r = ur(rng);
        ring.z = uz(rng);
        ring.g = ug(rng);
        ring.vol = uv(rng);
        ring.n_theta = n_theta;
    }
    return ParticleCloud(std::move(rings), Alpha(alpha));
}

//! Single ring of weight w = g * vol.
inline ParticleCloud single_ring(double R, double Z, double w, double alpha, int n_theta)
{
    return ParticleCloud({VortexRing{R, Z, w, 1.0, n_theta}}, Alpha(alpha));
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

} // namespace alpharing::test
