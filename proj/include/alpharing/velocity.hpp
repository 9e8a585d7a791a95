// Copyright 2026 The alpharing Authors
// SPDX-License-Identifier: Apache-2.0
//! \file velocity.hpp
//! Filtered velocity, gradient and Hessian by direct summation of the
//! smoothed Biot-Savart law over the azimuthal nodes of every ring.
//!
//! For ring j with nodes y_{j,m} (see sample_points) and weight
//! w_j = g_j vol_j, each node carries w_j / n_theta and
//!
//!   u(x) = sum_{j,m} (w_j/n) f_alpha(|d|) d/|d| x (y_2, -y_1, 0),
//!   d = x - y_{j,m}.
//!
//! A node coinciding with x contributes zero. Sums run ring-major,
//! node-minor in a fixed order, so results are bit-reproducible and
//! independent of how evaluation points are spread across workers.
#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "kernel.hpp"
#include "state.hpp"
#include "vec3.hpp"

namespace alpharing
{
//---------------------------------------------------------------------------//
/*!
 * Flattened quadrature nodes of a cloud in structure-of-arrays layout.
 * The orientation vector (y_2, -y_1, 0) is derived from each position.
 */
class NodeSet
{
  public:
    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

    explicit NodeSet(const ParticleCloud& cloud);

    //! Arbitrary nodes, e.g. deliberately non-axisymmetric test sets.
    NodeSet(std::span<const Vec3> positions,
            std::span<const double> weights,
            Alpha alpha);

    std::size_t size() const noexcept { return w_.size(); }
    Alpha alpha() const noexcept { return alpha_; }
    Vec3 position(std::size_t i) const noexcept { return {x_[i], y_[i], z_[i]}; }
    double weight(std::size_t i) const noexcept { return w_[i]; }

    //! Index of node m = 0 of ring j (only for cloud-built sets).
    std::size_t ring_offset(std::size_t j) const { return offsets_.at(j); }

    //! Sum over nodes of |weight| * r_node.
    double weighted_radius_sum() const noexcept;
    //! Sum over nodes of |weight|.
    double weight_l1() const noexcept;

    std::span<const double> xs() const noexcept { return x_; }
    std::span<const double> ys() const noexcept { return y_; }
    std::span<const double> zs() const noexcept { return z_; }
    std::span<const double> weights() const noexcept { return w_; }

  private:
    std::vector<double> x_, y_, z_, w_;
    std::vector<std::size_t> offsets_;
    Alpha alpha_;
};

//---------------------------------------------------------------------------//
struct VelocitySample
{
    Vec3 u;
    Mat3 grad{}; //!< grad[i][k] = d u_i / d x_k
};

//! Velocity at x; the node with index `skip` is excluded from the sum.
Vec3 eval_velocity(const Vec3& x,
                   const NodeSet& nodes,
                   std::size_t skip = NodeSet::npos);
Vec3 eval_velocity(const Vec3& x, const ParticleCloud& cloud);

//! Pointwise eval_velocity over a batch, parallel over points.
std::vector<Vec3>
eval_velocity_batch(std::span<const Vec3> points, const NodeSet& nodes);
std::vector<Vec3>
eval_velocity_batch(std::span<const Vec3> points, const ParticleCloud& cloud);

//! Velocity and its analytic gradient in one pass over the same nodes.
VelocitySample eval_velocity_grad(const Vec3& x, const NodeSet& nodes);
Mat3 eval_grad(const Vec3& x, const ParticleCloud& cloud);
Mat3 eval_grad(const Vec3& x, const NodeSet& nodes);

//! Central differences of eval_grad with step 1e-4 alpha.
Tensor3 eval_hessian(const Vec3& x, const NodeSet& nodes);
Tensor3 eval_hessian(const Vec3& x, const ParticleCloud& cloud);

//! u(x) . e_theta(x), e_theta = (x_2/r, -x_1/r, 0). Domain error on the axis.
double swirl_component(const Vec3& x, const NodeSet& nodes);
double swirl_component(const Vec3& x, const ParticleCloud& cloud);

//---------------------------------------------------------------------------//
/*!
 * Meridional advection velocity (u_r, u_z) of every ring, evaluated at its
 * theta = 0 node with that node's own contribution excluded by identity.
 */
std::vector<Meridional> advection_velocities(const ParticleCloud& cloud);

/*!
 * Velocity at target ring positions induced by a separate source node set
 * (one target per source ring, same ordering). Target j excludes node 0 of
 * source ring j, which is its own image in the source configuration.
 */
std::vector<Meridional>
advection_velocities(std::span<const Meridional> targets, const NodeSet& sources);

//---------------------------------------------------------------------------//
//! Gradient split by the cutoff chi(|x - y|): near (chi) and far (1 - chi).
struct GradSplit
{
    Mat3 near{};
    Mat3 far{};
};

//! Smooth cutoff: 1 for |s| < 1, 0 for |s| > 2.
double cutoff_chi(double s) noexcept;

GradSplit eval_grad_split(const Vec3& x, const NodeSet& nodes);

//---------------------------------------------------------------------------//
/*!
 * Pointwise a priori velocity bounds with constants from bound_scan.
 *
 * Splitting the orientation vector (y_2, -y_1, 0) into
 * (x_2, -x_1, 0) - (d_2, -d_1, 0) gives per node
 * |f_alpha(s)| (s + |x|_perp) <= m1/alpha + m0 |x|_perp / alpha^2, so
 *
 *   |u(x)| <= (||w||_1 / alpha^2) (m1 alpha + m0 |x|_perp)    (linear growth)
 *   |u(x)| <= (m0 / alpha^2) sum_nodes |w| r_node             (uniform)
 */
double velocity_bound_linear(const Vec3& x,
                             const NodeSet& nodes,
                             const kernel::KernelConstants& k);
double velocity_bound_uniform(const NodeSet& nodes,
                              const kernel::KernelConstants& k);

struct VelocityBoundReport
{
    bool holds = true;
    std::size_t points = 0;
    double worst_ratio = 0; //!< max |u| / min(bound_linear, bound_uniform)
    Vec3 worst_point;
    double worst_speed = 0;
    double worst_bound = 0;
};

VelocityBoundReport velocity_bound_check(const ParticleCloud& cloud,
                                         std::span<const Vec3> points,
                                         const kernel::KernelConstants& k);

/*!
 * Lipschitz constant for u on the segment [a, b] from the mean value
 * theorem: sum_nodes |w| r_node (mf1/alpha^3 + 2 m0/(alpha^2 dist)),
 * dist the distance from the node to the segment. Infinite if the
 * segment touches a node.
 */
double lipschitz_bound(const Vec3& a,
                       const Vec3& b,
                       const NodeSet& nodes,
                       const kernel::KernelConstants& k);

} // namespace alpharing
