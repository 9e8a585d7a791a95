// Copyright 2026 The alpharing Authors
// SPDX-License-Identifier: Apache-2.0
#include "alpharing/evolve.hpp"

#include <algorithm>
#include <cmath>

#include "alpharing/parallel.hpp"
#include "alpharing/velocity.hpp"

namespace alpharing
{
namespace
{
void check_finite(std::span<const Meridional> v, const char* what)
{
    for (std::size_t j = 0; j < v.size(); ++j)
        if (!std::isfinite(v[j].r) || !std::isfinite(v[j].z))
            throw NonFiniteStateError(j, what);
}

// base + h * slope, clamped to the half-plane.
std::vector<Meridional> offset(std::span<const Meridional> base,
                               std::span<const Meridional> slope,
                               double h,
                               std::size_t& clamps)
{
    std::vector<Meridional> out(base.size());
    for (std::size_t j = 0; j < base.size(); ++j)
    {
        out[j] = {base[j].r + h * slope[j].r, base[j].z + h * slope[j].z};
        if (out[j].r < 0)
        {
            out[j].r = 0;
            ++clamps;
        }
    }
    check_finite(out, "position");
    return out;
}

std::vector<Meridional> velocities_of(const ParticleCloud& cloud)
{
    auto v = advection_velocities(cloud);
    check_finite(v, "velocity");
    return v;
}
} // namespace

//---------------------------------------------------------------------------//
void TrajectoryHistory::append(const TrajectoryHistory& next)
{
    for (std::size_t k = 0; k < next.times.size(); ++k)
    {
        if (!times.empty() && next.times[k] <= times.back())
            continue;
        times.push_back(next.times[k]);
        positions.push_back(next.positions[k]);
        velocities.push_back(next.velocities[k]);
    }
    clamp_count += next.clamp_count;
    if (provenance.empty())
        provenance = next.provenance;
}

NonFiniteStateError::NonFiniteStateError(std::size_t ring, const std::string& what)
    : std::runtime_error("non-finite " + what + " at ring " + std::to_string(ring))
    , ring_(ring)
{
}

PicardDivergence::PicardDivergence(std::vector<double> monitor)
    : std::runtime_error("picard iteration did not converge within "
                         + std::to_string(monitor.size()) + " iterates (last g = "
                         + (monitor.empty() ? std::string("n/a")
                                            : std::to_string(monitor.back()))
                         + ")")
    , monitor_(std::move(monitor))
{
}

//---------------------------------------------------------------------------//
Rk4StepResult rk4_step_detail(const ParticleCloud& cloud, double dt)
{
    if (!std::isfinite(dt) || dt == 0)
        throw std::invalid_argument("rk4_step: dt must be finite and nonzero");

    const auto x0 = cloud.positions();
    const double t0 = cloud.time();
    std::size_t clamps = 0;

    const auto k1 = velocities_of(cloud);
    const auto y2 = offset(x0, k1, 0.5 * dt, clamps);
    const auto k2 = velocities_of(cloud.moved(y2, t0 + 0.5 * dt));
    const auto y3 = offset(x0, k2, 0.5 * dt, clamps);
    const auto k3 = velocities_of(cloud.moved(y3, t0 + 0.5 * dt));
    const auto y4 = offset(x0, k3, dt, clamps);
    const auto k4 = velocities_of(cloud.moved(y4, t0 + dt));

    std::vector<Meridional> slope(x0.size());
    for (std::size_t j = 0; j < x0.size(); ++j)
    {
        slope[j].r = (k1[j].r + 2 * k2[j].r + 2 * k3[j].r + k4[j].r) / 6;
        slope[j].z = (k1[j].z + 2 * k2[j].z + 2 * k3[j].z + k4[j].z) / 6;
    }
    const auto x1 = offset(x0, slope, dt, clamps);
    return {cloud.moved(x1, t0 + dt), k1, clamps};
}

ParticleCloud rk4_step(const ParticleCloud& cloud, double dt)
{
    return rk4_step_detail(cloud, dt).cloud;
}

//---------------------------------------------------------------------------//
double contraction_estimate(const ParticleCloud& cloud)
{
    const NodeSet nodes(cloud);
    const auto& rings = cloud.rings();
    std::vector<double> norms(rings.size());
    parallel_for(rings.size(), [&](std::size_t j) {
        norms[j] = operator_norm(eval_grad({rings[j].r, 0.0, rings[j].z}, nodes));
    });
    double k = 0;
    for (double v : norms)
        k = std::max(k, v);
    return k;
}

namespace
{
// Position of the previous iterate halfway through interval k.
std::vector<Meridional> midpoint(const TrajectoryHistory& prev,
                                 std::size_t k,
                                 double h,
                                 TimeInterpolation interp)
{
    const auto& p0 = prev.positions[k];
    const auto& p1 = prev.positions[k + 1];
    const auto& v0 = prev.velocities[k];
    const auto& v1 = prev.velocities[k + 1];
    std::vector<Meridional> out(p0.size());
    for (std::size_t j = 0; j < p0.size(); ++j)
    {
        Meridional m{0.5 * (p0[j].r + p1[j].r), 0.5 * (p0[j].z + p1[j].z)};
        if (interp == TimeInterpolation::cubic_hermite)
        {
            // Hermite basis at s = 1/2: (p0 + p1)/2 + h (v0 - v1)/8.
            m.r += 0.125 * h * (v0[j].r - v1[j].r);
            m.z += 0.125 * h * (v0[j].z - v1[j].z);
        }
        m.r = std::max(m.r, 0.0);
        out[j] = m;
    }
    return out;
}
} // namespace

PicardResult picard_solve(const ParticleCloud& cloud, const PicardOptions& opts)
{
    if (!(opts.window > 0) || !std::isfinite(opts.window))
        throw std::invalid_argument("picard: window > 0 required");
    if (opts.nodes < 1 || opts.max_iter < 1 || !(opts.tol > 0))
        throw std::invalid_argument(
            "picard: nodes >= 1, max_iter >= 1, tol > 0 required");

    const std::size_t K = static_cast<std::size_t>(opts.nodes);
    const std::size_t n_rings = cloud.size();
    const double t0 = cloud.time();
    const double h = opts.window / double(K);
    const auto x0 = cloud.positions();

    // Iterate 0: the frozen map, with zero velocity.
    TrajectoryHistory prev;
    prev.provenance = "picard";
    for (std::size_t k = 0; k <= K; ++k)
    {
        prev.times.push_back(k == K ? t0 + opts.window
                                    : t0 + opts.window * double(k) / double(K));
        prev.positions.push_back(x0);
        prev.velocities.emplace_back(n_rings);
    }

    PicardWindowReport report;
    report.t_start = t0;
    report.window = opts.window;
    report.contraction = contraction_estimate(cloud);

    std::size_t clamps = 0;
    for (int n = 1; n <= opts.max_iter; ++n)
    {
        std::vector<NodeSet> at_node;
        std::vector<NodeSet> at_mid;
        at_node.reserve(K + 1);
        at_mid.reserve(K);
        for (std::size_t k = 0; k <= K; ++k)
            at_node.emplace_back(cloud.moved(prev.positions[k], prev.times[k]));
        for (std::size_t k = 0; k < K; ++k)
            at_mid.emplace_back(cloud.moved(midpoint(prev, k, h, opts.interpolation),
                                            prev.times[k] + 0.5 * h));

        TrajectoryHistory next;
        next.provenance = "picard";
        next.times = prev.times;
        next.positions.assign(K + 1, {});
        next.velocities.assign(K + 1, {});
        next.positions[0] = x0;
        std::size_t iter_clamps = 0;
        for (std::size_t k = 0; k < K; ++k)
        {
            const auto& y = next.positions[k];
            auto k1 = advection_velocities(y, at_node[k]);
            check_finite(k1, "velocity");
            const auto y2 = offset(y, k1, 0.5 * h, iter_clamps);
            const auto k2 = advection_velocities(y2, at_mid[k]);
            const auto y3 = offset(y, k2, 0.5 * h, iter_clamps);
            const auto k3 = advection_velocities(y3, at_mid[k]);
            const auto y4 = offset(y, k3, h, iter_clamps);
            const auto k4 = advection_velocities(y4, at_node[k + 1]);
            std::vector<Meridional> slope(n_rings);
            for (std::size_t j = 0; j < n_rings; ++j)
            {
                slope[j].r = (k1[j].r + 2 * k2[j].r + 2 * k3[j].r + k4[j].r) / 6;
                slope[j].z = (k1[j].z + 2 * k2[j].z + 2 * k3[j].z + k4[j].z) / 6;
            }
            next.positions[k + 1] = offset(y, slope, h, iter_clamps);
            next.velocities[k] = std::move(k1);
        }
        next.velocities[K] = advection_velocities(next.positions[K], at_node[K]);
        check_finite(next.velocities[K], "velocity");

        double g = 0;
        for (std::size_t k = 0; k <= K; ++k)
            for (std::size_t j = 0; j < n_rings; ++j)
                g = std::max(g, std::hypot(next.positions[k][j].r - prev.positions[k][j].r,
                                           next.positions[k][j].z - prev.positions[k][j].z));
        report.monitor.push_back(g);
        report.iterations = n;
        clamps = iter_clamps;
        prev = std::move(next);
        if (g < opts.tol)
        {
            report.converged = true;
            break;
        }
    }
    if (!report.converged)
        throw PicardDivergence(report.monitor);

    prev.clamp_count = clamps;
    ParticleCloud final_cloud = cloud.moved(prev.positions.back(), prev.times.back());
    return {std::move(prev), std::move(report), std::move(final_cloud)};
}

//---------------------------------------------------------------------------//
namespace
{
TrajectoryHistory single_node(const ParticleCloud& cloud, const char* provenance)
{
    TrajectoryHistory h;
    h.provenance = provenance;
    h.times.push_back(cloud.time());
    h.positions.push_back(cloud.positions());
    h.velocities.push_back(velocities_of(cloud));
    return h;
}

AdvanceResult advance_rk4(const ParticleCloud& cloud,
                          double T,
                          const AdvanceControls& c,
                          const SnapshotSink& sink)
{
    const double ratio = T / c.dt;
    const double rounded = std::round(ratio);
    const bool aligned = std::abs(ratio - rounded) <= 1e-9 * std::max(1.0, ratio);
    const long steps = aligned ? long(rounded) : long(std::ceil(ratio));
    const double t_end = cloud.time() + T;

    AdvanceResult res{cloud, {}, {}};
    res.history.provenance = "rk4";
    ParticleCloud current = cloud;
    bool emitted = false;
    for (long s = 0; s < steps; ++s)
    {
        const double dt = (!aligned && s + 1 == steps) ? t_end - current.time() : c.dt;
        auto step = rk4_step_detail(current, dt);
        res.history.times.push_back(current.time());
        res.history.positions.push_back(current.positions());
        res.history.velocities.push_back(std::move(step.start_velocity));
        res.history.clamp_count += step.clamps;
        current = std::move(step.cloud);
        emitted = false;
        if (sink && (s + 1) % c.snapshot_every == 0)
        {
            sink(current);
            emitted = true;
        }
    }
    res.history.times.push_back(current.time());
    res.history.positions.push_back(current.positions());
    res.history.velocities.push_back(velocities_of(current));
    if (sink && !emitted && steps > 0)
        sink(current);
    res.cloud = std::move(current);
    return res;
}

AdvanceResult advance_picard(const ParticleCloud& cloud,
                             double T,
                             const AdvanceControls& c,
                             const SnapshotSink& sink)
{
    const double t_end = cloud.time() + T;
    AdvanceResult res{cloud, {}, {}};
    ParticleCloud current = cloud;
    long window_index = 0;
    bool emitted = false;
    while (current.time() < t_end)
    {
        const double k = contraction_estimate(current);
        double w = k > 0 ? std::min(c.dt, 0.5 / k) : c.dt;
        const double remaining = t_end - current.time();
        if (w >= remaining * (1 - 1e-9))
            w = remaining;
        PicardOptions opts = c.picard;
        opts.window = w;
        auto win = picard_solve(current, opts);
        if (w == remaining)
        {
            win.history.times.back() = t_end;
            win.final_cloud = win.final_cloud.moved(win.final_cloud.positions(), t_end);
        }
        res.history.append(win.history);
        res.picard.windows.push_back(std::move(win.report));
        current = std::move(win.final_cloud);
        ++window_index;
        emitted = false;
        if (sink && window_index % c.snapshot_every == 0)
        {
            sink(current);
            emitted = true;
        }
    }
    res.history.provenance = "picard";
    if (res.history.times.empty())
        res.history = single_node(cloud, "picard");
    if (sink && !emitted && window_index > 0)
        sink(current);
    res.cloud = std::move(current);
    return res;
}
} // namespace

AdvanceResult advance(const ParticleCloud& cloud,
                      double T,
                      const AdvanceControls& controls,
                      const SnapshotSink& sink)
{
    if (!(T >= 0) || !std::isfinite(T))
        throw std::invalid_argument("advance: T >= 0 required");
    if (!(controls.dt > 0))
        throw std::invalid_argument("advance: dt > 0 required");
    if (controls.snapshot_every < 1)
        throw std::invalid_argument("advance: snapshot_every >= 1 required");

    if (sink)
        sink(cloud);
    if (T == 0)
        return {cloud,
                single_node(cloud, controls.evolver == EvolverKind::rk4 ? "rk4"
                                                                        : "picard"),
                {}};
    return controls.evolver == EvolverKind::rk4 ? advance_rk4(cloud, T, controls, sink)
                                                : advance_picard(cloud, T, controls, sink);
}

} // namespace alpharing
