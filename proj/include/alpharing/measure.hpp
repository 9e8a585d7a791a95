// Copyright 2026 The alpharing Authors
// SPDX-License-Identifier: Apache-2.0
//! \file measure.hpp
//! Measure-valued (Dirac ring) initial data: mollification onto a
//! particle cloud, and epsilon sweeps of the uniform velocity bounds.
#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "evolve.hpp"
#include "kernel.hpp"
#include "state.hpp"
#include "vec3.hpp"

namespace alpharing
{
//! Integral of exp(-1/(1 - s^2)) over (-1, 1).
inline constexpr double kBumpIntegral = 0.44399381616807943782;

//! Unit-integral bump on (-1, 1): exp(-1/(1 - s^2)) / kBumpIntegral.
double bump(double s) noexcept;

//! Tensor bump of width eps with unit integral over the (dr, dz) plane.
double mollifier(double dr, double dz, double eps) noexcept;

//! Minimum number of grid cells across eps in each direction.
inline constexpr int kCellsPerEps = 6;

class UnderResolvedError : public std::invalid_argument
{
  public:
    UnderResolvedError(int required_nr, int required_nz, const std::string& msg);
    int required_nr() const noexcept { return required_nr_; }
    int required_nz() const noexcept { return required_nz_; }

  private:
    int required_nr_;
    int required_nz_;
};

/*!
 * q0^eps / r as a profile: sum_i m_i psi_eps(r - r_i, z - z_i) / (2 pi r).
 *
 * A ring of potential-vorticity mass m spread over the meridional density
 * rho(r, z) has int (q^theta/r) dV = int rho dr dz when q^theta/r = rho/(2 pi r),
 * because dV = 2 pi r dr dz. Dividing by 2 pi r therefore makes the
 * discrete sum of g vol reproduce sum_i m_i.
 */
Profile mollified_profile(const MeasureData& data, double eps);

/*!
 * Sample q0^eps onto the grid via init_from_profile. Rejects grids with
 * fewer than kCellsPerEps cells across eps, and atoms closer than eps to
 * the axis (the bump would cross r = 0).
 */
ParticleCloud mollify(const MeasureData& data,
                      double eps,
                      const GridSpec& grid,
                      Alpha alpha);

//---------------------------------------------------------------------------//
//! Statistics of one (eps, snapshot) pair.
struct SweepRecord
{
    double alpha = 0;
    double eps = 0;
    double t = 0;
    std::size_t rings = 0;
    double l1_discrete = 0;     //!< sum |g| vol
    double total_variation = 0; //!< ||q0||_M
    double sup_speed = 0;       //!< sup over probes of |u|
    double sup_grad_near = 0;   //!< sup |grad u| restricted to chi(|x-y|)
    double sup_grad_far = 0;    //!< sup |grad u| restricted to 1 - chi
    double speed_bound = 0;     //!< eps-independent envelope at the worst probe
    bool within_bound = true;
};

struct SweepRunSummary
{
    double alpha = 0;
    double eps = 0;
    bool ok = false;
    std::string error;
    double sup_speed = 0;
    double l1_discrete = 0;
};

struct SweepReport
{
    std::vector<SweepRecord> records;
    std::vector<SweepRunSummary> runs;
    //! Every record satisfies the eps-independent (||q0||_M) speed envelope.
    bool bounded = true;
    //! (max - min) / max of per-run sup speeds over successful runs.
    double speed_variation = 0;
    std::vector<std::string> failures;
};

/*!
 * For each eps (decreasing): mollify, advance over [0, T], and record at
 * every snapshot the probe suprema of |u^eps| and of the near/far split of
 * grad u^eps. The speed is checked against the envelope
 * (||q0||_M (1 + 1e-2) / alpha^2)(m1 alpha + m0 |x|_perp), which does not
 * depend on eps. A failing run is reported, not thrown.
 */
SweepReport uniform_bound_sweep(const MeasureData& data,
                                std::span<const double> eps_list,
                                Alpha alpha,
                                std::span<const Vec3> probes,
                                const GridSpec& grid,
                                double T,
                                const AdvanceControls& controls,
                                const kernel::KernelConstants& constants);

} // namespace alpharing
