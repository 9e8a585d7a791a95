// Copyright 2026 The alpharing Authors
// SPDX-License-Identifier: Apache-2.0
#include "alpharing/state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace alpharing
{
namespace
{
constexpr double kTwoPi = 2 * std::numbers::pi;
// Relative out-of-box mass above which a profile is rejected.
constexpr double kOverflowTolerance = 1e-12;
} // namespace

void validate(const VortexRing& ring)
{
    if (!std::isfinite(ring.r) || !std::isfinite(ring.z) || !std::isfinite(ring.g)
        || !std::isfinite(ring.vol))
        throw std::invalid_argument("ring: non-finite field");
    if (ring.r < 0)
        throw std::invalid_argument("ring: r >= 0 required");
    if (!(ring.vol > 0))
        throw std::invalid_argument("ring: vol > 0 required");
    if (ring.n_theta < 4 || ring.n_theta % 2 != 0)
        throw std::invalid_argument("ring: n_theta must be even and >= 4");
}

ParticleCloud::ParticleCloud(std::vector<VortexRing> rings, Alpha alpha, double t)
    : rings_(std::move(rings)), alpha_(alpha), t_(t)
{
    for (const auto& ring : rings_)
        validate(ring);
}

std::vector<Meridional> ParticleCloud::positions() const
{
    std::vector<Meridional> out(rings_.size());
    std::transform(rings_.begin(), rings_.end(), out.begin(),
                   [](const VortexRing& r) { return Meridional{r.r, r.z}; });
    return out;
}

ParticleCloud
ParticleCloud::moved(std::span<const Meridional> positions, double t) const
{
    if (positions.size() != rings_.size())
        throw std::invalid_argument("moved: position count mismatch");
    ParticleCloud next = *this;
    for (std::size_t j = 0; j < rings_.size(); ++j)
    {
        if (!std::isfinite(positions[j].r) || !std::isfinite(positions[j].z)
            || positions[j].r < 0)
            throw std::invalid_argument("moved: invalid position for ring "
                                        + std::to_string(j));
        next.rings_[j].r = positions[j].r;
        next.rings_[j].z = positions[j].z;
    }
    next.t_ = t;
    return next;
}

ParticleCloud ParticleCloud::with_alpha(Alpha alpha) const
{
    ParticleCloud next = *this;
    next.alpha_ = alpha;
    return next;
}

//---------------------------------------------------------------------------//
void validate(const GridSpec& grid)
{
    const Box& b = grid.box;
    if (!(b.r_min >= 0) || !(b.r_max > b.r_min) || !(b.z_max > b.z_min))
        throw std::invalid_argument(
            "grid: box must satisfy 0 <= r_min < r_max and z_min < z_max");
    if (grid.nr < 1 || grid.nz < 1)
        throw std::invalid_argument("grid: nr, nz >= 1 required");
    if (grid.n_theta < 4 || grid.n_theta % 2 != 0)
        throw std::invalid_argument("grid: n_theta must be even and >= 4");
}

ProfileSupportError::ProfileSupportError(double overflow_fraction)
    : std::runtime_error("profile support exceeds box: overflow fraction "
                         + std::to_string(overflow_fraction))
    , overflow_fraction_(overflow_fraction)
{
}

ParticleCloud
init_from_profile(const Profile& profile, const GridSpec& grid, Alpha alpha)
{
    validate(grid);
    const Box& b = grid.box;
    const double dr = b.dr(grid.nr);
    const double dz = b.dz(grid.nz);

    std::vector<VortexRing> rings;
    double inside = 0;
    double outside = 0;
    // i, k run one cell past each side; the band feeds the support check.
    for (int i = -1; i <= grid.nr; ++i)
    {
        const double r = b.r_min + (i + 0.5) * dr;
        if (r <= 0)
            continue;
        for (int k = -1; k <= grid.nz; ++k)
        {
            const double z = b.z_min + (k + 0.5) * dz;
            const double g = profile(r, z);
            if (!std::isfinite(g))
                throw std::invalid_argument("profile returned a non-finite value");
            const double vol = kTwoPi * r * dr * dz;
            const bool in_band = i < 0 || i >= grid.nr || k < 0 || k >= grid.nz;
            if (in_band)
            {
                outside += std::abs(g) * vol;
                continue;
            }
            inside += std::abs(g) * vol;
            if (g * vol != 0)
                rings.push_back({r, z, g, vol, grid.n_theta});
        }
    }
    if (outside > 0)
    {
        const double fraction = outside / (inside + outside);
        if (fraction > kOverflowTolerance)
            throw ProfileSupportError(fraction);
    }
    return ParticleCloud(std::move(rings), alpha);
}

double lp_norm(const ParticleCloud& cloud, double p)
{
    if (std::isnan(p) || p < 1)
        throw std::domain_error("lp_norm: p >= 1 required");
    if (cloud.empty())
        throw std::invalid_argument("lp_norm: empty cloud");
    if (std::isinf(p))
    {
        double m = 0;
        for (const auto& ring : cloud.rings())
            m = std::max(m, std::abs(ring.g));
        return m;
    }
    double s = 0;
    for (const auto& ring : cloud.rings())
        s += std::pow(std::abs(ring.g), p) * ring.vol;
    return std::pow(s, 1 / p);
}

std::vector<Vec3> sample_points(const VortexRing& ring)
{
    std::vector<Vec3> pts(ring.n_theta);
    for (int m = 0; m < ring.n_theta; ++m)
    {
        const double th = kTwoPi * m / ring.n_theta;
        pts[m] = {ring.r * std::cos(th), ring.r * std::sin(th), ring.z};
    }
    return pts;
}

//---------------------------------------------------------------------------//
MeasureData::MeasureData(std::vector<MeasureAtom> atoms, Box support)
    : atoms_(std::move(atoms)), support_(support)
{
    for (const auto& a : atoms_)
    {
        if (!std::isfinite(a.r) || !std::isfinite(a.z) || !std::isfinite(a.mass))
            throw std::invalid_argument("measure: non-finite atom");
        if (a.r < 0)
            throw std::invalid_argument("measure: atom r >= 0 required");
        if (!support_.contains(a.r, a.z))
            throw std::invalid_argument("measure: atom outside declared support box");
    }
}

double MeasureData::total_variation() const noexcept
{
    double s = 0;
    for (const auto& a : atoms_)
        s += std::abs(a.mass);
    return s;
}

double MeasureData::signed_mass() const noexcept
{
    double s = 0;
    for (const auto& a : atoms_)
        s += a.mass;
    return s;
}

} // namespace alpharing
