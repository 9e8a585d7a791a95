// Copyright 2026 The alpharing Authors
// SPDX-License-Identifier: Apache-2.0
//! \file evolve.hpp
//! Time evolution of a ParticleCloud: classical RK4 marching of the coupled
//! ring ODE, and Picard iteration on the flow map over short windows.
#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "state.hpp"
#include "vec3.hpp"

namespace alpharing
{
//---------------------------------------------------------------------------//
/*!
 * Time-indexed samples of the flow map y(t_k, x_j) in the meridional plane,
 * with the advection velocity recorded at every node.
 */
struct TrajectoryHistory
{
    std::vector<double> times;
    std::vector<std::vector<Meridional>> positions;  //!< [k][j]
    std::vector<std::vector<Meridional>> velocities; //!< [k][j]
    std::string provenance;
    std::size_t clamp_count = 0; //!< times an r < 0 was clamped to the axis

    std::size_t nodes() const noexcept { return times.size(); }
    std::size_t rings() const noexcept
    {
        return positions.empty() ? 0 : positions.front().size();
    }

    //! Append all nodes of `next` whose time is past our last node.
    void append(const TrajectoryHistory& next);
};

//! A ring position or velocity became NaN/inf.
class NonFiniteStateError : public std::runtime_error
{
  public:
    NonFiniteStateError(std::size_t ring, const std::string& what);
    std::size_t ring() const noexcept { return ring_; }

  private:
    std::size_t ring_;
};

//---------------------------------------------------------------------------//
struct Rk4StepResult
{
    ParticleCloud cloud;
    std::vector<Meridional> start_velocity; //!< first-stage slope
    std::size_t clamps = 0;
};

/*!
 * One classical RK4 step of dx_j/dt = u(x_j; all rings), with the velocity
 * re-evaluated from the intermediate ring positions at each stage. Negative
 * dt integrates backward. Rings pushed across the axis are clamped to r = 0
 * and counted.
 */
Rk4StepResult rk4_step_detail(const ParticleCloud& cloud, double dt);
ParticleCloud rk4_step(const ParticleCloud& cloud, double dt);

//---------------------------------------------------------------------------//
enum class TimeInterpolation
{
    linear,
    cubic_hermite,
};

struct PicardOptions
{
    double window = 0.1;    //!< T1, length of the time window
    int nodes = 16;         //!< K, intervals per window
    double tol = 1e-10;     //!< stop once g^N < tol
    int max_iter = 50;
    //! Interpolation of the frozen previous iterate between nodes.
    TimeInterpolation interpolation = TimeInterpolation::cubic_hermite;
};

//! Convergence record of one Picard window.
struct PicardWindowReport
{
    double t_start = 0;
    double window = 0;       //!< T1
    double contraction = 0;  //!< empirical k, 1/time
    int iterations = 0;
    std::vector<double> monitor; //!< g^N per iterate N = 1, 2, ...
    bool converged = false;
};

struct PicardReport
{
    std::vector<PicardWindowReport> windows;
};

class PicardDivergence : public std::runtime_error
{
  public:
    explicit PicardDivergence(std::vector<double> monitor);
    const std::vector<double>& monitor() const noexcept { return monitor_; }

  private:
    std::vector<double> monitor_;
};

struct PicardResult
{
    TrajectoryHistory history;
    PicardWindowReport report;
    ParticleCloud final_cloud;
};

//! Empirical contraction constant: sup over rings of |grad u|_op.
double contraction_estimate(const ParticleCloud& cloud);

/*!
 * Picard iteration on the flow map over [t, t + window].
 *
 * Iterate 0 is the frozen map y^0(t, x) = x. Iterate n integrates every
 * ring through the velocity induced by iterate n-1 (interpolated in time
 * between the K + 1 stored nodes), with RK4 on each node interval; the
 * weights g vol never change. Stops when the monitor
 * g^n = max_{k,j} |y^n(t_k, x_j) - y^{n-1}(t_k, x_j)| drops below tol.
 * Throws PicardDivergence (carrying the monitor) after max_iter iterates.
 */
PicardResult picard_solve(const ParticleCloud& cloud, const PicardOptions& opts);

//---------------------------------------------------------------------------//
enum class EvolverKind
{
    rk4,
    picard,
};

struct AdvanceControls
{
    EvolverKind evolver = EvolverKind::rk4;
    double dt = 0.01;      //!< RK4 step; for Picard the requested window
    int snapshot_every = 1; //!< steps (RK4) or windows (Picard)
    PicardOptions picard;
};

struct AdvanceResult
{
    ParticleCloud cloud;
    TrajectoryHistory history;
    PicardReport picard;
};

//! Called with the initial cloud and then at the configured cadence.
using SnapshotSink = std::function<void(const ParticleCloud&)>;

/*!
 * Advance to t + T by fixed RK4 steps or chained Picard windows. Picard
 * windows have length min(dt, 1/(2k)) with k re-estimated per window.
 * The final state is always emitted to the sink.
 */
AdvanceResult advance(const ParticleCloud& cloud,
                      double T,
                      const AdvanceControls& controls,
                      const SnapshotSink& sink = {});

} // namespace alpharing
