// Copyright 2026 The alpharing Authors
// SPDX-License-Identifier: Apache-2.0
//! \file state.hpp
//! Discrete axisymmetric swirl-free flow state: vortex rings in the
//! meridional half-plane carrying transported samples of q^theta / r.
#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "kernel.hpp"
#include "vec3.hpp"

namespace alpharing
{
//---------------------------------------------------------------------------//
/*!
 * One Lagrangian degree of freedom: a circular filament of radius r at
 * height z. The sample g of q^theta/r and the 3D cell volume vol are
 * constant along the trajectory; only (r, z) move.
 */
struct VortexRing
{
    double r = 0;
    double z = 0;
    double g = 0;   //!< q^theta / r sample
    double vol = 0; //!< 2 pi r dr dz of the originating cell
    int n_theta = 16;

    //! Integrated potential vorticity carried by the ring.
    double weight() const noexcept { return g * vol; }

    friend bool operator==(const VortexRing&, const VortexRing&) = default;
};

//! Throws std::invalid_argument unless r >= 0, vol > 0, n_theta >= 4 even.
void validate(const VortexRing& ring);

//---------------------------------------------------------------------------//
/*!
 * Full discrete state. Immutable between steps: evolvers build new clouds
 * through moved(), which keeps g, vol, n_theta and ring order untouched.
 */
class ParticleCloud
{
  public:
    ParticleCloud(std::vector<VortexRing> rings, Alpha alpha, double t = 0);

    const std::vector<VortexRing>& rings() const noexcept { return rings_; }
    std::size_t size() const noexcept { return rings_.size(); }
    bool empty() const noexcept { return rings_.empty(); }
    Alpha alpha() const noexcept { return alpha_; }
    double time() const noexcept { return t_; }

    std::vector<Meridional> positions() const;

    //! Same rings at new positions and time.
    ParticleCloud moved(std::span<const Meridional> positions, double t) const;

    ParticleCloud with_alpha(Alpha alpha) const;

  private:
    std::vector<VortexRing> rings_;
    Alpha alpha_;
    double t_;
};

//---------------------------------------------------------------------------//
//! Rectangle [r_min, r_max] x [z_min, z_max] in the meridional half-plane.
struct Box
{
    double r_min = 0;
    double r_max = 1;
    double z_min = -1;
    double z_max = 1;

    double dr(int nr) const noexcept { return (r_max - r_min) / nr; }
    double dz(int nz) const noexcept { return (z_max - z_min) / nz; }
    bool contains(double r, double z) const noexcept
    {
        return r >= r_min && r <= r_max && z >= z_min && z <= z_max;
    }
    friend bool operator==(const Box&, const Box&) = default;
};

struct GridSpec
{
    Box box;
    int nr = 64;
    int nz = 64;
    int n_theta = 16;

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

void validate(const GridSpec& grid);

//! q^theta / r as a function of (r, z).
using Profile = std::function<double(double r, double z)>;

//! Raised when a profile has mass outside the discretization box.
class ProfileSupportError : public std::runtime_error
{
  public:
    explicit ProfileSupportError(double overflow_fraction);
    double overflow_fraction() const noexcept { return overflow_fraction_; }

  private:
    double overflow_fraction_;
};

/*!
 * Midpoint discretization of a profile: one ring per cell centre with
 * g = profile(r, z) and vol = 2 pi r dr dz. Cells with zero weight
 * (including cells centred on the axis) are dropped.
 *
 * The profile is also sampled on a one-cell band around the box; any
 * mass found there is reported as a ProfileSupportError.
 */
ParticleCloud init_from_profile(const Profile& profile,
                                const GridSpec& grid,
                                Alpha alpha);

//! (sum |g|^p vol)^{1/p}; p = infinity gives max |g|. Requires p >= 1.
double lp_norm(const ParticleCloud& cloud, double p);

//! Azimuthal quadrature nodes (r cos th_m, r sin th_m, z), th_m = 2 pi m / n.
std::vector<Vec3> sample_points(const VortexRing& ring);

//---------------------------------------------------------------------------//
//! A Dirac ring of potential vorticity mass.
struct MeasureAtom
{
    double r = 0;
    double z = 0;
    double mass = 0;

    friend bool operator==(const MeasureAtom&, const MeasureAtom&) = default;
};

/*!
 * Finite signed combination of Dirac rings, compactly supported in a
 * declared box. Represents measure-valued q0^theta/r (vortex sheets).
 */
class MeasureData
{
  public:
    MeasureData(std::vector<MeasureAtom> atoms, Box support);

    const std::vector<MeasureAtom>& atoms() const noexcept { return atoms_; }
    const Box& support() const noexcept { return support_; }

    //! Sum |m_i|: the total-variation norm of the measure.
    double total_variation() const noexcept;
    double signed_mass() const noexcept;

  private:
    std::vector<MeasureAtom> atoms_;
    Box support_;
};

} // namespace alpharing
