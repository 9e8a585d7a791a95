// Copyright 2026 The alpharing Authors
// SPDX-License-Identifier: Apache-2.0
//! \file diagnostics.hpp
//! Weak-form residuals, conservation monitors, bound assertions and
//! convergence-order estimation. Every function here is a pure read of
//! recorded histories or clouds.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "evolve.hpp"
#include "kernel.hpp"
#include "state.hpp"
#include "vec3.hpp"

namespace alpharing
{
//---------------------------------------------------------------------------//
// Test functions
//---------------------------------------------------------------------------//
//! Smooth bump exp(-1/(1 - s^2)) on (-1, 1) mapped onto (t0, t1), and its
//! time derivative. Peak value 1/e at the midpoint.
struct TimeBump
{
    double t0 = 0;
    double t1 = 1;

    double value(double t) const noexcept;
    double derivative(double t) const noexcept;
};

//! Scalar space-time test function for the transport weak form.
class ScalarTestFunction
{
  public:
    virtual ~ScalarTestFunction() = default;
    virtual double value(double t, const Vec3& x) const = 0;
    virtual double time_derivative(double t, const Vec3& x) const = 0;
    virtual Vec3 gradient(double t, const Vec3& x) const = 0;
};

/*!
 * phi(t, x) = b(t) psi(x) with b a TimeBump and
 * psi = (1 - |x - c|^2 / rho^2)^6 on the ball of radius rho.
 */
class SpaceTimeBump final : public ScalarTestFunction
{
  public:
    SpaceTimeBump(TimeBump time, Vec3 center, double radius);

    double value(double t, const Vec3& x) const override;
    double time_derivative(double t, const Vec3& x) const override;
    Vec3 gradient(double t, const Vec3& x) const override;

  private:
    TimeBump time_;
    Vec3 center_;
    double radius_;
};

//! Pointwise data of a vector test field.
struct VectorTestSample
{
    Vec3 phi;
    Vec3 dt_phi;
    Vec3 lap_phi;    //!< Laplacian of phi
    Vec3 lap_dt_phi; //!< Laplacian of d phi / dt
    Mat3 grad{};     //!< grad[k][i] = d phi_k / d x_i
};

//! Divergence-free vector test field with analytic derivatives.
class VectorTestField
{
  public:
    virtual ~VectorTestField() = default;
    virtual VectorTestSample sample(double t, const Vec3& x) const = 0;
    //! Spatial bounding box (Cartesian) of the support.
    virtual std::pair<Vec3, Vec3> support() const = 0;
    //! Time after which the field vanishes identically.
    virtual double end_time() const = 0;
};

/*!
 * phi(t, x) = b(t) (grad psi(x) x e) with psi = (1 - |x - c|^2/rho^2)^6.
 * Divergence-free for any fixed unit vector e. The time profile b is
 * exp(-1/(1 - s^2)) on (-t1, t1), so phi(0) != 0 and phi(t1) = 0.
 */
class CurlBumpField final : public VectorTestField
{
  public:
    CurlBumpField(double t1, Vec3 center, double radius, Vec3 axis);

    VectorTestSample sample(double t, const Vec3& x) const override;
    std::pair<Vec3, Vec3> support() const override;
    double end_time() const override { return time_.t1; }

  private:
    TimeBump time_;
    Vec3 center_;
    double radius_;
    Vec3 axis_;
};

//---------------------------------------------------------------------------//
// Weak-form residuals
//---------------------------------------------------------------------------//
/*!
 * Lagrangian transport residual: the sum over rings j and azimuthal nodes
 * m of (w_j / n_theta) times the time integral of
 * d_t phi + u . grad phi along y_{j,m}(t), with u the recorded advection
 * velocity rotated to node m. The integrand is the total derivative of
 * phi along the trajectory, so the exact value is zero; the trapezoid sum
 * over the history nodes leaves only the time-discretization error.
 *
 * Throws std::invalid_argument if phi does not vanish at the first and
 * last history times on every trajectory point.
 */
double weak_form_residual(const TrajectoryHistory& history,
                          const ParticleCloud& cloud0,
                          const ScalarTestFunction& phi);

struct WeakSolutionOptions
{
    int cells = 4; //!< cells per axis over the support box, 4^3 Gauss points each
    double divergence_tolerance = 1e-9;
};

struct WeakSolutionTerms
{
    double time = 0;      //!< int int u . (1 - a^2 Lap) d_t phi
    double transport = 0; //!< int int (u . grad) phi . (1 - a^2 Lap) u
    double hessian = 0;   //!< a^2 int int (grad phi : D^2) u . u
    double initial = 0;   //!< int u_0 . (1 - a^2 Lap) phi(0)
    double residual = 0;  //!< time + transport + hessian + initial
    //! Sum of the absolute terms, for relative comparisons.
    double scale = 0;
};

/*!
 * Residual of the velocity weak formulation of the Euler-alpha system,
 * assembled on a Gauss grid over the support of phi and integrated in
 * time over the history nodes up to phi's end time (trapezoid, with a
 * fourth-order end correction on uniform nodes).
 *
 * Throws std::invalid_argument if the sampled divergence of phi exceeds
 * options.divergence_tolerance times its sampled gradient scale, or if the
 * history ends before phi does.
 */
WeakSolutionTerms weak_solution_residual(const TrajectoryHistory& history,
                                         const ParticleCloud& cloud0,
                                         const VectorTestField& phi,
                                         const WeakSolutionOptions& options = {});

//! Rebuild the cloud at history node k from the initial rings.
ParticleCloud cloud_at(const TrajectoryHistory& history,
                       const ParticleCloud& cloud0,
                       std::size_t k);

//---------------------------------------------------------------------------//
// Monitors
//---------------------------------------------------------------------------//
struct EnergyGrid
{
    Box box; //!< meridional box; r_min is clamped to 0 on use
    int nr = 64;
    int nz = 64;
    int azimuths = 4; //!< samples per node period 2 pi / n_theta
};

class EnergyGridError : public std::invalid_argument
{
  public:
    EnergyGridError(Box required, const std::string& msg);
    const Box& required() const noexcept { return required_; }

  private:
    Box required_;
};

/*!
 * E = 1/2 sum_cells (|u|^2 + alpha^2 |grad u|_F^2) 2 pi r dr dz, sampled at
 * meridional cell centres and averaged over `azimuths` angles spread
 * across one node period (the discrete field repeats with that period).
 * The box must extend at least 5 alpha beyond every ring; otherwise
 * EnergyGridError carries the smallest valid box.
 */
double energy_monitor(const ParticleCloud& cloud, const EnergyGrid& grid);

/*!
 * Measure-preservation probe. Each centre carries four passive tracers at
 * (r +- delta, z) and (r, z +- delta), placed at azimuth pi/n_theta so
 * they never coincide with a node. Tracers and cloud march together by
 * RK4 over [0, T] with step dt. Returns det(D y) r_final / r_initial per
 * centre, which equals 1 up to O(delta^2) + O(dt^4).
 */
std::vector<double> flow_map_volume_ratio(const ParticleCloud& cloud,
                                          std::span<const Meridional> centers,
                                          double delta,
                                          double T,
                                          double dt);

//---------------------------------------------------------------------------//
// Convergence order
//---------------------------------------------------------------------------//
struct ResolutionSample
{
    double h = 0;
    std::vector<double> observable;
};

enum class OrderReference
{
    successive, //!< errors are |v(h) - v(h/2)|
    exact,      //!< errors are |v(h) - reference|
    finest,     //!< errors are |v(h) - v(h_min)|
};

struct OrderEstimate
{
    double order = 0;
    std::vector<double> h;
    std::vector<double> errors; //!< max-norm error per resolution used
    bool monotone = true;
    std::string warning;
};

/*!
 * Least-squares slope of log(error) against log(h). Requires at least
 * three resolutions with successive ratios of 2 (in any input order).
 * Errors use the max norm over the observable vector.
 */
OrderEstimate order_estimate(std::span<const ResolutionSample> runs,
                             OrderReference mode = OrderReference::successive,
                             std::span<const double> reference = {});

//---------------------------------------------------------------------------//
// Verification pass
//---------------------------------------------------------------------------//
struct PropertyResult
{
    std::string property;
    double value = 0;
    std::optional<double> bound;
    bool pass = false;
    std::string detail;
};

struct VerifyOptions
{
    int probe_count = 64;
    std::uint64_t seed = 1;
    double swirl_tolerance = 1e-8;
    double divergence_tolerance = 1e-10;
};

/*!
 * Probes for swirl checks: random points whose meridional distance from
 * every ring is at least `clearance`, at random azimuths, with radius in
 * (0.1 clearance, max ring radius + clearance).
 */
std::vector<Vec3> far_probes(const ParticleCloud& cloud,
                             std::size_t count,
                             double clearance,
                             std::uint64_t seed);

/*!
 * Smallest clearance d at which the azimuthal trapezoid error of a ring of
 * radius R, exp(-n_theta acosh(1 + d^2 / (2 r R))), is 100x below `tol`
 * for every probe radius r <= R + d.
 */
double swirl_probe_clearance(double R, int n_theta, double tol);

//! Random points in the ball of given radius around the cloud's centroid.
std::vector<Vec3> ball_probes(const ParticleCloud& cloud,
                              std::size_t count,
                              double radius,
                              std::uint64_t seed);

/*!
 * Assemble the pass/fail properties of a run from its snapshots:
 * finite_state, transport_invariance, lp_invariance, divergence_free,
 * swirl_free and velocity_bound.
 */
std::vector<PropertyResult> verify_snapshots(std::span<const ParticleCloud> snapshots,
                                             const VerifyOptions& options);

bool all_pass(std::span<const PropertyResult> results) noexcept;

} // namespace alpharing
