// Copyright 2026 The alpharing Authors
// SPDX-License-Identifier: Apache-2.0
#include "alpharing/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "alpharing/parallel.hpp"
#include "alpharing/velocity.hpp"

namespace alpharing
{
EnergyGridError::EnergyGridError(Box required, const std::string& msg)
    : std::invalid_argument(msg), required_(required)
{
}

double energy_monitor(const ParticleCloud& cloud, const EnergyGrid& grid)
{
    if (grid.nr < 1 || grid.nz < 1 || grid.azimuths < 1)
        throw std::invalid_argument("energy_monitor: nr, nz, azimuths >= 1 required");
    if (cloud.empty())
        return 0;

    const double a = cloud.alpha().value();
    const double margin = 5 * a;
    Box need{0, 0, INFINITY, -INFINITY};
    for (const auto& ring : cloud.rings())
    {
        need.r_max = std::max(need.r_max, ring.r + margin);
        need.z_min = std::min(need.z_min, ring.z - margin);
        need.z_max = std::max(need.z_max, ring.z + margin);
    }
    const Box& b = grid.box;
    if (b.r_max < need.r_max || b.z_min > need.z_min || b.z_max < need.z_max)
        throw EnergyGridError(need,
                              "energy_monitor: grid must cover r <= "
                                  + std::to_string(need.r_max) + ", z in ["
                                  + std::to_string(need.z_min) + ", "
                                  + std::to_string(need.z_max) + "]");

    const double r0 = std::max(b.r_min, 0.0);
    const double dr = (b.r_max - r0) / grid.nr;
    const double dz = b.dz(grid.nz);
    const NodeSet nodes(cloud);
    const std::size_t n = std::size_t(grid.nr) * std::size_t(grid.nz);
    std::vector<double> dens(n);
    const double period = 2 * std::numbers::pi / cloud.rings().front().n_theta;
    parallel_for(n, [&](std::size_t c) {
        const std::size_t i = c / std::size_t(grid.nz);
        const std::size_t k = c % std::size_t(grid.nz);
        const double r = r0 + (double(i) + 0.5) * dr;
        const double z = b.z_min + (double(k) + 0.5) * dz;
        double acc = 0;
        for (int m = 0; m < grid.azimuths; ++m)
        {
            const double th = period * (m + 0.5) / grid.azimuths;
            const auto s
                = eval_velocity_grad({r * std::cos(th), r * std::sin(th), z}, nodes);
            const double g = frobenius(s.grad);
            acc += dot(s.u, s.u) + a * a * g * g;
        }
        dens[c] = acc / grid.azimuths * 2 * std::numbers::pi * r;
    });
    double e = 0;
    for (double v : dens)
        e += v;
    return 0.5 * e * dr * dz;
}

//---------------------------------------------------------------------------//
std::vector<double> flow_map_volume_ratio(const ParticleCloud& cloud,
                                          std::span<const Meridional> centers,
                                          double delta,
                                          double T,
                                          double dt)
{
    if (!(delta > 0) || !(T >= 0) || !(dt > 0))
        throw std::invalid_argument("flow_map_volume_ratio: delta, dt > 0 and T >= 0 "
                                    "required");
    for (const auto& c : centers)
        if (!(c.r > delta))
            throw std::invalid_argument(
                "flow_map_volume_ratio: centres must satisfy r > delta");

    const int n_theta = cloud.empty() ? 16 : cloud.rings().front().n_theta;
    const double phi0 = std::numbers::pi / n_theta;
    const double cs = std::cos(phi0);
    const double sn = std::sin(phi0);

    // Five tracers per centre: centre, r+, r-, z+, z-.
    std::vector<Meridional> tracers;
    for (const auto& c : centers)
    {
        tracers.push_back(c);
        tracers.push_back({c.r + delta, c.z});
        tracers.push_back({c.r - delta, c.z});
        tracers.push_back({c.r, c.z + delta});
        tracers.push_back({c.r, c.z - delta});
    }

    auto tracer_velocity = [&](const ParticleCloud& at, std::span<const Meridional> p) {
        const NodeSet nodes(at);
        std::vector<Meridional> v(p.size());
        parallel_for(p.size(), [&](std::size_t i) {
            const Vec3 u = eval_velocity({p[i].r * cs, p[i].r * sn, p[i].z}, nodes);
            v[i] = {u.x * cs + u.y * sn, u.z};
        });
        return v;
    };
    auto shift = [](std::span<const Meridional> x, std::span<const Meridional> v,
                    double h) {
        std::vector<Meridional> out(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            out[i] = {x[i].r + h * v[i].r, x[i].z + h * v[i].z};
        return out;
    };

    const long steps = T > 0 ? long(std::ceil(T / dt - 1e-9)) : 0;
    const double h = steps > 0 ? T / double(steps) : 0;
    ParticleCloud current = cloud;
    for (long s = 0; s < steps; ++s)
    {
        const double t = current.time();
        const auto x = current.positions();
        const auto k1 = advection_velocities(current);
        const auto q1 = tracer_velocity(current, tracers);
        const auto c2 = current.moved(shift(x, k1, 0.5 * h), t + 0.5 * h);
        const auto k2 = advection_velocities(c2);
        const auto q2 = tracer_velocity(c2, shift(tracers, q1, 0.5 * h));
        const auto c3 = current.moved(shift(x, k2, 0.5 * h), t + 0.5 * h);
        const auto k3 = advection_velocities(c3);
        const auto q3 = tracer_velocity(c3, shift(tracers, q2, 0.5 * h));
        const auto c4 = current.moved(shift(x, k3, h), t + h);
        const auto k4 = advection_velocities(c4);
        const auto q4 = tracer_velocity(c4, shift(tracers, q3, h));

        std::vector<Meridional> xn(x.size());
        for (std::size_t j = 0; j < x.size(); ++j)
            xn[j] = {x[j].r + h * (k1[j].r + 2 * k2[j].r + 2 * k3[j].r + k4[j].r) / 6,
                     x[j].z + h * (k1[j].z + 2 * k2[j].z + 2 * k3[j].z + k4[j].z) / 6};
        for (std::size_t i = 0; i < tracers.size(); ++i)
        {
            tracers[i].r += h * (q1[i].r + 2 * q2[i].r + 2 * q3[i].r + q4[i].r) / 6;
            tracers[i].z += h * (q1[i].z + 2 * q2[i].z + 2 * q3[i].z + q4[i].z) / 6;
        }
        current = current.moved(xn, t + h);
    }

    std::vector<double> ratios(centers.size());
    for (std::size_t c = 0; c < centers.size(); ++c)
    {
        const Meridional* p = &tracers[5 * c];
        const double j_rr = (p[1].r - p[2].r) / (2 * delta);
        const double j_zr = (p[1].z - p[2].z) / (2 * delta);
        const double j_rz = (p[3].r - p[4].r) / (2 * delta);
        const double j_zz = (p[3].z - p[4].z) / (2 * delta);
        ratios[c] = (j_rr * j_zz - j_rz * j_zr) * p[0].r / centers[c].r;
    }
    return ratios;
}

//---------------------------------------------------------------------------//
OrderEstimate order_estimate(std::span<const ResolutionSample> runs,
                             OrderReference mode,
                             std::span<const double> reference)
{
    if (runs.size() < 3)
        throw std::invalid_argument("order_estimate: at least 3 resolutions required");
    std::vector<ResolutionSample> sorted(runs.begin(), runs.end());
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return a.h > b.h; });
    for (std::size_t i = 0; i < sorted.size(); ++i)
    {
        if (!(sorted[i].h > 0))
            throw std::invalid_argument("order_estimate: h > 0 required");
        if (sorted[i].observable.size() != sorted[0].observable.size())
            throw std::invalid_argument("order_estimate: observable sizes differ");
        if (i > 0 && std::abs(sorted[i - 1].h / sorted[i].h - 2) > 1e-6)
            throw std::invalid_argument(
                "order_estimate: resolutions must be dyadically related");
    }
    if (mode == OrderReference::exact && reference.size() != sorted[0].observable.size())
        throw std::invalid_argument("order_estimate: reference size mismatch");

    auto max_diff = [](std::span<const double> a, std::span<const double> b) {
        double e = 0;
        for (std::size_t i = 0; i < a.size(); ++i)
            e = std::max(e, std::abs(a[i] - b[i]));
        return e;
    };

    OrderEstimate est;
    const std::size_t n = sorted.size();
    for (std::size_t i = 0; i < n; ++i)
    {
        double e;
        if (mode == OrderReference::exact)
            e = max_diff(sorted[i].observable, reference);
        else if (i + 1 == n)
            break;
        else if (mode == OrderReference::successive)
            e = max_diff(sorted[i].observable, sorted[i + 1].observable);
        else
            e = max_diff(sorted[i].observable, sorted[n - 1].observable);
        est.h.push_back(sorted[i].h);
        est.errors.push_back(e);
    }

    for (std::size_t i = 1; i < est.errors.size(); ++i)
        if (!(est.errors[i] < est.errors[i - 1]))
            est.monotone = false;
    if (!est.monotone)
        est.warning = "errors are not monotone in h";

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (std::size_t i = 0; i < est.errors.size(); ++i)
    {
        if (!(est.errors[i] > 0))
            continue;
        const double x = std::log(est.h[i]);
        const double y = std::log(est.errors[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    if (m < 2)
    {
        est.order = std::numeric_limits<double>::quiet_NaN();
        est.warning += est.warning.empty() ? "" : "; ";
        est.warning += "fewer than two nonzero errors";
        return est;
    }
    if (m < int(est.errors.size()))
        est.warning += (est.warning.empty() ? "" : "; ")
                       + std::string("zero errors excluded from the fit");
    est.order = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    return est;
}

//---------------------------------------------------------------------------//
std::vector<Vec3> far_probes(const ParticleCloud& cloud,
                             std::size_t count,
                             double clearance,
                             std::uint64_t seed)
{
    if (cloud.empty() || count == 0)
        return {};
    if (!(clearance > 0))
        throw std::invalid_argument("far_probes: clearance > 0 required");
    double r_max = 0, z_min = INFINITY, z_max = -INFINITY;
    for (const auto& ring : cloud.rings())
    {
        r_max = std::max(r_max, ring.r);
        z_min = std::min(z_min, ring.z);
        z_max = std::max(z_max, ring.z);
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ur(0.1 * clearance, r_max + clearance);
    std::uniform_real_distribution<double> uz(z_min - 2 * clearance,
                                              z_max + 2 * clearance);
    std::uniform_real_distribution<double> uth(0, 2 * std::numbers::pi);

    std::vector<Vec3> out;
    const std::size_t max_tries = 1000 * count;
    for (std::size_t tries = 0; out.size() < count && tries < max_tries; ++tries)
    {
        const double r = ur(rng);
        const double z = uz(rng);
        const double th = uth(rng);
        bool clear = true;
        for (const auto& ring : cloud.rings())
            if (std::hypot(r - ring.r, z - ring.z) < clearance)
            {
                clear = false;
                break;
            }
        if (clear)
            out.push_back({r * std::cos(th), r * std::sin(th), z});
    }
    if (out.size() < count)
        throw std::runtime_error("far_probes: could not place probes");
    return out;
}

std::vector<Vec3> ball_probes(const ParticleCloud& cloud,
                              std::size_t count,
                              double radius,
                              std::uint64_t seed)
{
    double zc = 0;
    for (const auto& ring : cloud.rings())
        zc += ring.z;
    if (!cloud.empty())
        zc /= double(cloud.size());
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-radius, radius);
    std::vector<Vec3> out;
    while (out.size() < count)
    {
        const Vec3 p{u(rng), u(rng), u(rng)};
        if (dot(p, p) <= radius * radius)
            out.push_back({p.x, p.y, p.z + zc});
    }
    return out;
}

double swirl_probe_clearance(double R, int n_theta, double tol)
{
    if (!(R > 0) || n_theta < 1 || !(tol > 0))
        throw std::invalid_argument("swirl_probe_clearance: R, n_theta, tol > 0 required");
    const double target = std::log(100 / tol) / n_theta;
    double d = 0.25 * R;
    while (std::acosh(1 + d * d / (2 * (R + d) * R)) < target)
        d *= 1.1;
    return d;
}

namespace
{
double cloud_extent(const ParticleCloud& cloud)
{
    double zc = 0;
    for (const auto& ring : cloud.rings())
        zc += ring.z;
    zc /= double(std::max<std::size_t>(cloud.size(), 1));
    double e = 0;
    for (const auto& ring : cloud.rings())
        e = std::max(e, std::hypot(ring.r, ring.z - zc));
    return e;
}

PropertyResult make_result(std::string name, double value, double bound, bool pass)
{
    PropertyResult r;
    r.property = std::move(name);
    r.value = value;
    r.bound = bound;
    r.pass = pass;
    return r;
}
} // namespace

std::vector<PropertyResult> verify_snapshots(std::span<const ParticleCloud> snapshots,
                                             const VerifyOptions& options)
{
    if (snapshots.empty())
        throw std::invalid_argument("verify: no snapshots");
    std::vector<PropertyResult> out;
    const ParticleCloud& first = snapshots.front();
    const ParticleCloud& last = snapshots.back();

    // finite_state
    {
        double bad = 0;
        for (const auto& s : snapshots)
            for (const auto& ring : s.rings())
                if (!std::isfinite(ring.r) || !std::isfinite(ring.z) || ring.r < 0)
                    ++bad;
        out.push_back(make_result("finite_state", bad, 0, bad == 0));
    }

    // transport_invariance: g, vol, n_theta bit-identical and ring count fixed.
    {
        double mismatches = 0;
        for (const auto& s : snapshots)
        {
            if (s.size() != first.size())
            {
                mismatches += double(std::max(s.size(), first.size()));
                continue;
            }
            for (std::size_t j = 0; j < s.size(); ++j)
            {
                const auto& a = s.rings()[j];
                const auto& b = first.rings()[j];
                if (a.g != b.g || a.vol != b.vol || a.n_theta != b.n_theta)
                    ++mismatches;
            }
        }
        out.push_back(
            make_result("transport_invariance", mismatches, 0, mismatches == 0));
    }

    // lp_invariance for p = 1, 2, inf.
    {
        double worst = 0;
        bool comparable = true;
        if (!first.empty())
            for (const auto& s : snapshots)
            {
                if (s.size() != first.size())
                {
                    comparable = false;
                    continue;
                }
                for (double p : {1.0, 2.0, double(INFINITY)})
                {
                    const double a = lp_norm(first, p);
                    const double b = lp_norm(s, p);
                    worst = std::max(worst, a > 0 ? std::abs(b - a) / a : std::abs(b));
                }
            }
        out.push_back(make_result("lp_invariance", worst, 0, comparable && worst == 0));
    }

    const auto constants = kernel::bound_scan();
    double div_worst = 0;
    double swirl_worst = 0;
    VelocityBoundReport bound_report;
    for (const ParticleCloud* cloud : {&first, &last})
    {
        if (cloud->empty())
            continue;
        const NodeSet nodes(*cloud);
        const double extent = cloud_extent(*cloud);
        const auto ball = ball_probes(*cloud, std::size_t(options.probe_count),
                                      extent + 1, options.seed);
        std::vector<double> div(ball.size());
        parallel_for(ball.size(), [&](std::size_t i) {
            const Mat3 g = eval_grad(ball[i], nodes);
            const double f = frobenius(g);
            div[i] = f > 0 ? std::abs(trace(g)) / f : 0.0;
        });
        for (double v : div)
            div_worst = std::max(div_worst, v);

        double R = 0;
        int n_theta = 1 << 30;
        for (const auto& ring : cloud->rings())
        {
            R = std::max(R, ring.r);
            n_theta = std::min(n_theta, ring.n_theta);
        }
        if (R > 0)
        {
            const double clearance
                = swirl_probe_clearance(R, n_theta, options.swirl_tolerance);
            const auto far = far_probes(*cloud, std::size_t(options.probe_count),
                                        clearance, options.seed + 1);
            std::vector<double> sw(far.size());
            parallel_for(far.size(), [&](std::size_t i) {
                const Vec3 u = eval_velocity(far[i], nodes);
                const double speed = norm(u);
                sw[i] = speed > 0 ? std::abs(swirl_component(far[i], nodes)) / speed
                                  : 0.0;
            });
            for (double v : sw)
                swirl_worst = std::max(swirl_worst, v);
        }

        const auto rep = velocity_bound_check(*cloud, ball, constants);
        if (!rep.holds || rep.worst_ratio > bound_report.worst_ratio)
        {
            const bool held = bound_report.holds && rep.holds;
            bound_report = rep;
            bound_report.holds = held;
        }
    }
    out.push_back(make_result("divergence_free", div_worst,
                              options.divergence_tolerance,
                              div_worst <= options.divergence_tolerance));
    out.push_back(make_result("swirl_free", swirl_worst, options.swirl_tolerance,
                              swirl_worst <= options.swirl_tolerance));
    auto vb = make_result("velocity_bound", bound_report.worst_ratio, 1.0,
                          bound_report.holds);
    vb.detail = "max |u| / bound over probes";
    out.push_back(vb);
    return out;
}

bool all_pass(std::span<const PropertyResult> results) noexcept
{
    return std::all_of(results.begin(), results.end(),
                       [](const PropertyResult& r) { return r.pass; });
}

} // namespace alpharing
