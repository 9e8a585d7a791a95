// Copyright 2026 The alpharing Authors
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "alpharing/diagnostics.hpp"
#include "alpharing/parallel.hpp"
#include "alpharing/velocity.hpp"

namespace alpharing
{
namespace
{
// psi = F(q), q = |x - c|^2 / rho^2, F(q) = (1 - q)^6.
struct RadialPoly
{
    double f0, f1, f2, f3; // F, F', F'', F'''
};

RadialPoly radial_poly(double q) noexcept
{
    if (q >= 1)
        return {0, 0, 0, 0};
    const double p = 1 - q;
    const double p2 = p * p;
    const double p3 = p2 * p;
    return {p3 * p3, -6 * p3 * p2, 30 * p2 * p2, -120 * p3};
}

// 4-point Gauss-Legendre rule on [-1, 1].
constexpr std::array<double, 4> kGaussX{
    -0.86113631159405257522, -0.33998104358485626480,
    0.33998104358485626480,  0.86113631159405257522};
constexpr std::array<double, 4> kGaussW{
    0.34785484513745385737, 0.65214515486254614263,
    0.65214515486254614263, 0.34785484513745385737};

Vec3 rotate_node(const Meridional& p, double theta)
{
    return {p.r * std::cos(theta), p.r * std::sin(theta), p.z};
}

// Time quadrature weights over nodes [0, n): trapezoid, or with `corrected`
// set and at least 8 uniform nodes the fourth-order end-corrected rule.
std::vector<double> time_weights(std::span<const double> t, bool corrected)
{
    const std::size_t n = t.size();
    std::vector<double> w(n, 0.0);
    if (n < 2)
        return w;
    const double h = (t.back() - t.front()) / double(n - 1);
    bool uniform = corrected && n >= 8;
    for (std::size_t k = 1; uniform && k < n; ++k)
        uniform = std::abs(t[k] - t[k - 1] - h) <= 1e-9 * h;
    if (uniform)
    {
        static constexpr std::array<double, 4> end{17.0 / 48, 59.0 / 48, 43.0 / 48,
                                                   49.0 / 48};
        for (std::size_t k = 0; k < n; ++k)
            w[k] = h;
        for (std::size_t k = 0; k < 4; ++k)
        {
            w[k] = h * end[k];
            w[n - 1 - k] = h * end[k];
        }
        return w;
    }
    for (std::size_t k = 1; k < n; ++k)
    {
        const double dt = t[k] - t[k - 1];
        w[k - 1] += 0.5 * dt;
        w[k] += 0.5 * dt;
    }
    return w;
}
} // namespace

//---------------------------------------------------------------------------//
double TimeBump::value(double t) const noexcept
{
    const double s = (2 * t - t0 - t1) / (t1 - t0);
    const double a = 1 - s * s;
    return a > 0 ? std::exp(-1 / a) : 0.0;
}

double TimeBump::derivative(double t) const noexcept
{
    const double s = (2 * t - t0 - t1) / (t1 - t0);
    const double a = 1 - s * s;
    if (!(a > 0))
        return 0;
    return std::exp(-1 / a) * (-2 * s / (a * a)) * 2 / (t1 - t0);
}

SpaceTimeBump::SpaceTimeBump(TimeBump time, Vec3 center, double radius)
    : time_(time), center_(center), radius_(radius)
{
    if (!(radius > 0) || !(time.t1 > time.t0))
        throw std::invalid_argument("SpaceTimeBump: radius > 0 and t1 > t0 required");
}

double SpaceTimeBump::value(double t, const Vec3& x) const
{
    const Vec3 d = x - center_;
    return time_.value(t) * radial_poly(dot(d, d) / (radius_ * radius_)).f0;
}

double SpaceTimeBump::time_derivative(double t, const Vec3& x) const
{
    const Vec3 d = x - center_;
    return time_.derivative(t) * radial_poly(dot(d, d) / (radius_ * radius_)).f0;
}

Vec3 SpaceTimeBump::gradient(double t, const Vec3& x) const
{
    const Vec3 d = x - center_;
    const double rho2 = radius_ * radius_;
    const auto F = radial_poly(dot(d, d) / rho2);
    return (time_.value(t) * 2 * F.f1 / rho2) * d;
}

CurlBumpField::CurlBumpField(double t1, Vec3 center, double radius, Vec3 axis)
    : time_{-t1, t1}, center_(center), radius_(radius), axis_(axis)
{
    if (!(t1 > 0) || !(radius > 0))
        throw std::invalid_argument("CurlBumpField: t1 > 0 and radius > 0 required");
    const double len = norm(axis);
    if (!(len > 0))
        throw std::invalid_argument("CurlBumpField: nonzero axis required");
    axis_ = (1 / len) * axis;
}

VectorTestSample CurlBumpField::sample(double t, const Vec3& x) const
{
    VectorTestSample s{};
    const Vec3 d = x - center_;
    const double rho2 = radius_ * radius_;
    const double q = dot(d, d) / rho2;
    if (q >= 1)
        return s;
    const auto F = radial_poly(q);

    // grad psi, Hessian of psi and grad Lap psi.
    const Vec3 g = (2 * F.f1 / rho2) * d;
    Mat3 hess{};
    for (int i = 0; i < 3; ++i)
        for (int a = 0; a < 3; ++a)
            hess[i][a] = 4 * F.f2 * d[i] * d[a] / (rho2 * rho2)
                         + (i == a ? 2 * F.f1 / rho2 : 0.0);
    const double dH = 10 * F.f2 + 4 * q * F.f3;
    const Vec3 grad_lap = (2 * dH / (rho2 * rho2)) * d;

    const double b = time_.value(t);
    const double db = time_.derivative(t);
    const Vec3 curl = cross(g, axis_);
    const Vec3 lap = cross(grad_lap, axis_);
    s.phi = b * curl;
    s.dt_phi = db * curl;
    s.lap_phi = b * lap;
    s.lap_dt_phi = db * lap;
    for (int i = 0; i < 3; ++i)
    {
        const Vec3 col = cross(Vec3{hess[0][i], hess[1][i], hess[2][i]}, axis_);
        for (int k = 0; k < 3; ++k)
            s.grad[k][i] = b * col[k];
    }
    return s;
}

std::pair<Vec3, Vec3> CurlBumpField::support() const
{
    const Vec3 r{radius_, radius_, radius_};
    return {center_ - r, center_ + r};
}

//---------------------------------------------------------------------------//
ParticleCloud
cloud_at(const TrajectoryHistory& history, const ParticleCloud& cloud0, std::size_t k)
{
    if (k >= history.nodes())
        throw std::out_of_range("cloud_at: node index out of range");
    if (history.positions[k].size() != cloud0.size())
        throw std::invalid_argument("cloud_at: history and cloud ring counts differ");
    return cloud0.moved(history.positions[k], history.times[k]);
}

double weak_form_residual(const TrajectoryHistory& history,
                          const ParticleCloud& cloud0,
                          const ScalarTestFunction& phi)
{
    const std::size_t K = history.nodes();
    if (K == 0)
        throw std::invalid_argument("weak_form_residual: empty history");
    if (history.rings() != cloud0.size())
        throw std::invalid_argument("weak_form_residual: ring count mismatch");
    const auto& rings = cloud0.rings();

    double sup = 0;
    double end_max = 0;
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t j = 0; j < rings.size(); ++j)
        {
            const int n = rings[j].n_theta;
            for (int m = 0; m < n; ++m)
            {
                const double th = 2 * std::numbers::pi * m / n;
                const double v
                    = std::abs(phi.value(history.times[k],
                                         rotate_node(history.positions[k][j], th)));
                sup = std::max(sup, v);
                if (k == 0 || k + 1 == K)
                    end_max = std::max(end_max, v);
            }
        }
    if (end_max > 1e-14 * std::max(sup, 1e-300) && end_max > 0)
        throw std::invalid_argument(
            "weak_form_residual: test function must vanish at the end times");

    const auto w = time_weights(history.times, false);
    double total = 0;
    for (std::size_t k = 0; k < K; ++k)
    {
        const double t = history.times[k];
        double slice = 0;
        for (std::size_t j = 0; j < rings.size(); ++j)
        {
            const int n = rings[j].n_theta;
            const Meridional p = history.positions[k][j];
            const Meridional v = history.velocities[k][j];
            double ring_sum = 0;
            for (int m = 0; m < n; ++m)
            {
                const double th = 2 * std::numbers::pi * m / n;
                const Vec3 y = rotate_node(p, th);
                const Vec3 u{v.r * std::cos(th), v.r * std::sin(th), v.z};
                ring_sum += phi.time_derivative(t, y) + dot(u, phi.gradient(t, y));
            }
            slice += rings[j].weight() / n * ring_sum;
        }
        total += w[k] * slice;
    }
    return std::abs(total);
}

//---------------------------------------------------------------------------//
WeakSolutionTerms weak_solution_residual(const TrajectoryHistory& history,
                                         const ParticleCloud& cloud0,
                                         const VectorTestField& phi,
                                         const WeakSolutionOptions& options)
{
    if (options.cells < 1)
        throw std::invalid_argument("weak_solution_residual: cells >= 1 required");
    if (history.nodes() == 0)
        throw std::invalid_argument("weak_solution_residual: empty history");
    const double t0 = history.times.front();
    const double t_end = phi.end_time();
    if (history.times.back() - t0 < t_end * (1 - 1e-12))
        throw std::invalid_argument(
            "weak_solution_residual: history ends before the test field vanishes");

    // Gauss points over the support box.
    const auto [lo, hi] = phi.support();
    const int nc = options.cells;
    std::vector<Vec3> points;
    std::vector<double> qw;
    {
        const Vec3 h{(hi.x - lo.x) / nc, (hi.y - lo.y) / nc, (hi.z - lo.z) / nc};
        std::vector<std::array<double, 2>> ax[3];
        for (int a = 0; a < 3; ++a)
            for (int c = 0; c < nc; ++c)
                for (int g = 0; g < 4; ++g)
                    ax[a].push_back({lo[a] + h[a] * (c + 0.5 * (1 + kGaussX[g])),
                                     0.5 * h[a] * kGaussW[g]});
        for (const auto& px : ax[0])
            for (const auto& py : ax[1])
                for (const auto& pz : ax[2])
                {
                    points.push_back({px[0], py[0], pz[0]});
                    qw.push_back(px[1] * py[1] * pz[1]);
                }
    }

    // Divergence check on the quadrature grid at the start time.
    double div_max = 0;
    double grad_max = 0;
    for (const auto& x : points)
    {
        const auto s = phi.sample(0, x);
        div_max = std::max(div_max, std::abs(s.grad[0][0] + s.grad[1][1] + s.grad[2][2]));
        grad_max = std::max(grad_max, frobenius(s.grad));
    }
    if (div_max > options.divergence_tolerance * std::max(grad_max, 1e-300))
        throw std::invalid_argument("weak_solution_residual: test field is not "
                                    "divergence-free (sampled |div| = "
                                    + std::to_string(div_max) + ")");

    // Nodes up to the first one at or beyond the end of phi's support.
    std::size_t K = 0;
    while (K < history.nodes() && history.times[K] - t0 < t_end)
        ++K;
    K = std::min(K + 1, history.nodes());
    const auto tw = time_weights(std::span(history.times).first(K), true);

    const double a2 = cloud0.alpha().value() * cloud0.alpha().value();
    WeakSolutionTerms terms;
    struct Contribution
    {
        double time = 0, transport = 0, hessian = 0, initial = 0;
    };
    std::vector<Contribution> parts(points.size());
    for (std::size_t k = 0; k < K; ++k)
    {
        const double t = history.times[k] - t0;
        const NodeSet nodes(cloud_at(history, cloud0, k));
        parallel_for(points.size(), [&](std::size_t p) {
            parts[p] = {};
            const auto s = phi.sample(t, points[p]);
            const bool active = frobenius(s.grad) > 0 || norm(s.phi) > 0
                                || norm(s.dt_phi) > 0;
            if (!active)
                return;
            const auto vs = eval_velocity_grad(points[p], nodes);
            const Tensor3 hs = eval_hessian(points[p], nodes);
            const Vec3& u = vs.u;
            Vec3 lap_u;
            for (int l = 0; l < 3; ++l)
                lap_u[l] = hs[l][0][0] + hs[l][1][1] + hs[l][2][2];
            const Vec3 v = u - a2 * lap_u;

            Contribution c;
            c.time = dot(u, s.dt_phi - a2 * s.lap_dt_phi);
            for (int kk = 0; kk < 3; ++kk)
            {
                double ugp = 0;
                for (int i = 0; i < 3; ++i)
                    ugp += u[i] * s.grad[kk][i];
                c.transport += ugp * v[kk];
            }
            double hsum = 0;
            for (int kk = 0; kk < 3; ++kk)
                for (int i = 0; i < 3; ++i)
                    for (int l = 0; l < 3; ++l)
                        hsum += s.grad[kk][i] * hs[l][kk][i] * u[l];
            c.hessian = a2 * hsum;
            if (k == 0)
                c.initial = dot(u, s.phi - a2 * s.lap_phi);
            parts[p] = c;
        });
        for (std::size_t p = 0; p < points.size(); ++p)
        {
            terms.time += tw[k] * qw[p] * parts[p].time;
            terms.transport += tw[k] * qw[p] * parts[p].transport;
            terms.hessian += tw[k] * qw[p] * parts[p].hessian;
            terms.initial += qw[p] * parts[p].initial;
        }
    }
    terms.residual = terms.time + terms.transport + terms.hessian + terms.initial;
    terms.scale = std::abs(terms.time) + std::abs(terms.transport)
                  + std::abs(terms.hessian) + std::abs(terms.initial);
    return terms;
}

} // namespace alpharing
