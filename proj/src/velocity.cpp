// Copyright 2026 The alpharing Authors
// SPDX-License-Identifier: Apache-2.0
#include "alpharing/velocity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "alpharing/parallel.hpp"

namespace alpharing
{
namespace
{
void require_finite(const Vec3& x)
{
    if (!std::isfinite(x.x) || !std::isfinite(x.y) || !std::isfinite(x.z))
        throw std::invalid_argument("velocity: non-finite evaluation point");
}

// Gradient contribution of one node with kernel values already known.
// d x c with c = (py, -px, 0) is (dz px, dz py, -(dx px + dy py)).
inline void accumulate_grad(Mat3& g,
                            double w,
                            double dx,
                            double dy,
                            double dz,
                            double px,
                            double py,
                            double s,
                            double fa,
                            double fa_prime)
{
    const double h = fa / s;
    const double a = w * (fa_prime - h) / (s * s);
    const double wh = w * h;
    const double dc[3] = {dz * px, dz * py, -(dx * px + dy * py)};
    const double d[3] = {dx, dy, dz};
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k)
            g[i][k] += a * dc[i] * d[k];
    g[0][2] += wh * px;
    g[1][2] += wh * py;
    g[2][0] -= wh * px;
    g[2][1] -= wh * py;
}
} // namespace

//---------------------------------------------------------------------------//
NodeSet::NodeSet(const ParticleCloud& cloud) : alpha_(cloud.alpha())
{
    std::size_t total = 0;
    for (const auto& ring : cloud.rings())
        total += ring.n_theta;
    x_.reserve(total);
    y_.reserve(total);
    z_.reserve(total);
    w_.reserve(total);
    offsets_.reserve(cloud.size());
    for (const auto& ring : cloud.rings())
    {
        offsets_.push_back(w_.size());
        const double w = ring.weight() / ring.n_theta;
        for (const Vec3& p : sample_points(ring))
        {
            x_.push_back(p.x);
            y_.push_back(p.y);
            z_.push_back(p.z);
            w_.push_back(w);
        }
    }
}

NodeSet::NodeSet(std::span<const Vec3> positions,
                 std::span<const double> weights,
                 Alpha alpha)
    : alpha_(alpha)
{
    if (positions.size() != weights.size())
        throw std::invalid_argument("NodeSet: positions/weights size mismatch");
    for (std::size_t i = 0; i < positions.size(); ++i)
    {
        require_finite(positions[i]);
        if (!std::isfinite(weights[i]))
            throw std::invalid_argument("NodeSet: non-finite weight");
        x_.push_back(positions[i].x);
        y_.push_back(positions[i].y);
        z_.push_back(positions[i].z);
        w_.push_back(weights[i]);
    }
}

double NodeSet::weighted_radius_sum() const noexcept
{
    double s = 0;
    for (std::size_t i = 0; i < w_.size(); ++i)
        s += std::abs(w_[i]) * std::hypot(x_[i], y_[i]);
    return s;
}

double NodeSet::weight_l1() const noexcept
{
    double s = 0;
    for (double w : w_)
        s += std::abs(w);
    return s;
}

//---------------------------------------------------------------------------//
Vec3 eval_velocity(const Vec3& x, const NodeSet& nodes, std::size_t skip)
{
    require_finite(x);
    const double alpha = nodes.alpha().value();
    const double inv_alpha = 1.0 / alpha;
    const double inv_alpha2 = inv_alpha * inv_alpha;
    const auto xs = nodes.xs();
    const auto ys = nodes.ys();
    const auto zs = nodes.zs();
    const auto ws = nodes.weights();

    double ux = 0, uy = 0, uz = 0;
    const std::size_t n = ws.size();
    for (std::size_t i = 0; i < n; ++i)
    {
        if (i == skip)
            continue;
        const double dx = x.x - xs[i];
        const double dy = x.y - ys[i];
        const double dz = x.z - zs[i];
        const double s = std::sqrt(dx * dx + dy * dy + dz * dz);
        if (s == 0)
            continue;
        const double fa = kernel::f(s * inv_alpha) * inv_alpha2;
        const double c = ws[i] * fa / s;
        const double px = xs[i];
        const double py = ys[i];
        ux += c * (dz * px);
        uy += c * (dz * py);
        uz -= c * (dx * px + dy * py);
    }
    return {ux, uy, uz};
}

Vec3 eval_velocity(const Vec3& x, const ParticleCloud& cloud)
{
    return eval_velocity(x, NodeSet(cloud));
}

std::vector<Vec3>
eval_velocity_batch(std::span<const Vec3> points, const NodeSet& nodes)
{
    std::vector<Vec3> out(points.size());
    parallel_for(points.size(),
                 [&](std::size_t i) { out[i] = eval_velocity(points[i], nodes); });
    return out;
}

std::vector<Vec3>
eval_velocity_batch(std::span<const Vec3> points, const ParticleCloud& cloud)
{
    return eval_velocity_batch(points, NodeSet(cloud));
}

VelocitySample eval_velocity_grad(const Vec3& x, const NodeSet& nodes)
{
    require_finite(x);
    const double inv_alpha = 1.0 / nodes.alpha().value();
    const double inv_alpha2 = inv_alpha * inv_alpha;
    const double inv_alpha3 = inv_alpha2 * inv_alpha;
    const auto xs = nodes.xs();
    const auto ys = nodes.ys();
    const auto zs = nodes.zs();
    const auto ws = nodes.weights();

    VelocitySample out;
    double ux = 0, uy = 0, uz = 0;
    for (std::size_t i = 0; i < ws.size(); ++i)
    {
        const double dx = x.x - xs[i];
        const double dy = x.y - ys[i];
        const double dz = x.z - zs[i];
        const double s = std::sqrt(dx * dx + dy * dy + dz * dz);
        if (s == 0)
            continue;
        const double zeta = s * inv_alpha;
        const double fa = kernel::f(zeta) * inv_alpha2;
        const double fap = kernel::f_prime(zeta) * inv_alpha3;
        const double px = xs[i];
        const double py = ys[i];
        const double c = ws[i] * fa / s;
        ux += c * (dz * px);
        uy += c * (dz * py);
        uz -= c * (dx * px + dy * py);
        accumulate_grad(out.grad, ws[i], dx, dy, dz, px, py, s, fa, fap);
    }
    out.u = {ux, uy, uz};
    return out;
}

Mat3 eval_grad(const Vec3& x, const NodeSet& nodes)
{
    return eval_velocity_grad(x, nodes).grad;
}

Mat3 eval_grad(const Vec3& x, const ParticleCloud& cloud)
{
    return eval_grad(x, NodeSet(cloud));
}

Tensor3 eval_hessian(const Vec3& x, const NodeSet& nodes)
{
    const double h = 1e-4 * nodes.alpha().value();
    Tensor3 out{};
    for (int l = 0; l < 3; ++l)
    {
        Vec3 xp = x, xm = x;
        xp[l] += h;
        xm[l] -= h;
        const Mat3 gp = eval_grad(xp, nodes);
        const Mat3 gm = eval_grad(xm, nodes);
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k)
                out[i][k][l] = (gp[i][k] - gm[i][k]) / (2 * h);
    }
    return out;
}

Tensor3 eval_hessian(const Vec3& x, const ParticleCloud& cloud)
{
    return eval_hessian(x, NodeSet(cloud));
}

double swirl_component(const Vec3& x, const NodeSet& nodes)
{
    const double r = radial(x);
    if (!(r > 0))
        throw std::domain_error("swirl_component: e_theta undefined on the axis");
    const Vec3 u = eval_velocity(x, nodes);
    return (u.x * x.y - u.y * x.x) / r;
}

double swirl_component(const Vec3& x, const ParticleCloud& cloud)
{
    return swirl_component(x, NodeSet(cloud));
}

//---------------------------------------------------------------------------//
std::vector<Meridional> advection_velocities(const ParticleCloud& cloud)
{
    const NodeSet nodes(cloud);
    const auto& rings = cloud.rings();
    std::vector<Meridional> out(rings.size());
    parallel_for(rings.size(), [&](std::size_t j) {
        const Vec3 u = eval_velocity({rings[j].r, 0.0, rings[j].z}, nodes,
                                     nodes.ring_offset(j));
        out[j] = {u.x, u.z};
    });
    return out;
}

std::vector<Meridional>
advection_velocities(std::span<const Meridional> targets, const NodeSet& sources)
{
    std::vector<Meridional> out(targets.size());
    parallel_for(targets.size(), [&](std::size_t j) {
        const Vec3 u = eval_velocity({targets[j].r, 0.0, targets[j].z}, sources,
                                     sources.ring_offset(j));
        out[j] = {u.x, u.z};
    });
    return out;
}

//---------------------------------------------------------------------------//
double cutoff_chi(double s) noexcept
{
    const double a = std::abs(s);
    if (a <= 1)
        return 1;
    if (a >= 2)
        return 0;
    const auto h = [](double t) { return t > 0 ? std::exp(-1.0 / t) : 0.0; };
    const double t = a - 1;
    return h(1 - t) / (h(1 - t) + h(t));
}

GradSplit eval_grad_split(const Vec3& x, const NodeSet& nodes)
{
    require_finite(x);
    const double inv_alpha = 1.0 / nodes.alpha().value();
    const double inv_alpha2 = inv_alpha * inv_alpha;
    const double inv_alpha3 = inv_alpha2 * inv_alpha;
    const auto xs = nodes.xs();
    const auto ys = nodes.ys();
    const auto zs = nodes.zs();
    const auto ws = nodes.weights();

    GradSplit out;
    for (std::size_t i = 0; i < ws.size(); ++i)
    {
        const double dx = x.x - xs[i];
        const double dy = x.y - ys[i];
        const double dz = x.z - zs[i];
        const double s = std::sqrt(dx * dx + dy * dy + dz * dz);
        if (s == 0)
            continue;
        const double zeta = s * inv_alpha;
        const double fa = kernel::f(zeta) * inv_alpha2;
        const double fap = kernel::f_prime(zeta) * inv_alpha3;
        const double chi = cutoff_chi(s);
        if (chi > 0)
            accumulate_grad(out.near, ws[i] * chi, dx, dy, dz, xs[i], ys[i], s,
                            fa, fap);
        if (chi < 1)
            accumulate_grad(out.far, ws[i] * (1 - chi), dx, dy, dz, xs[i],
                            ys[i], s, fa, fap);
    }
    return out;
}

//---------------------------------------------------------------------------//
double velocity_bound_linear(const Vec3& x,
                             const NodeSet& nodes,
                             const kernel::KernelConstants& k)
{
    const double a = nodes.alpha().value();
    return nodes.weight_l1() / (a * a) * (k.m1 * a + k.m0 * radial(x));
}

double velocity_bound_uniform(const NodeSet& nodes, const kernel::KernelConstants& k)
{
    const double a = nodes.alpha().value();
    return k.m0 / (a * a) * nodes.weighted_radius_sum();
}

VelocityBoundReport velocity_bound_check(const ParticleCloud& cloud,
                                         std::span<const Vec3> points,
                                         const kernel::KernelConstants& k)
{
    const NodeSet nodes(cloud);
    const auto speeds = eval_velocity_batch(points, nodes);
    const double uniform = velocity_bound_uniform(nodes, k);

    VelocityBoundReport rep;
    rep.points = points.size();
    for (std::size_t i = 0; i < points.size(); ++i)
    {
        const double speed = norm(speeds[i]);
        const double bound
            = std::min(velocity_bound_linear(points[i], nodes, k), uniform);
        const double ratio = bound > 0 ? speed / bound : (speed > 0 ? INFINITY : 0);
        if (ratio > rep.worst_ratio || i == 0)
        {
            rep.worst_ratio = ratio;
            rep.worst_point = points[i];
            rep.worst_speed = speed;
            rep.worst_bound = bound;
        }
        // Round-off allowance on the summed left side.
        if (speed > bound * (1 + 1e-12) + 1e-300)
            rep.holds = false;
    }
    return rep;
}

double lipschitz_bound(const Vec3& a,
                       const Vec3& b,
                       const NodeSet& nodes,
                       const kernel::KernelConstants& k)
{
    const double alpha = nodes.alpha().value();
    const Vec3 ab = b - a;
    const double len2 = dot(ab, ab);
    double total = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i)
    {
        const Vec3 y = nodes.position(i);
        double t = len2 > 0 ? dot(y - a, ab) / len2 : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        const double dist = norm(y - (a + t * ab));
        if (dist == 0)
            return INFINITY;
        total += std::abs(nodes.weight(i)) * radial(y)
                 * (k.mf1 / (alpha * alpha * alpha)
                    + 2 * k.m0 / (alpha * alpha * dist));
    }
    return total;
}

} // namespace alpharing
