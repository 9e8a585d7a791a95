// Copyright 2026 The alpharing Authors
// SPDX-License-Identifier: Apache-2.0
#include "alpharing/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "alpharing/parallel.hpp"
#include "alpharing/velocity.hpp"

namespace alpharing
{
double bump(double s) noexcept
{
    const double a = 1 - s * s;
    if (!(a > 0))
        return 0;
    return std::exp(-1 / a) / kBumpIntegral;
}

double mollifier(double dr, double dz, double eps) noexcept
{
    return bump(dr / eps) * bump(dz / eps) / (eps * eps);
}

UnderResolvedError::UnderResolvedError(int required_nr,
                                       int required_nz,
                                       const std::string& msg)
    : std::invalid_argument(msg), required_nr_(required_nr), required_nz_(required_nz)
{
}

Profile mollified_profile(const MeasureData& data, double eps)
{
    if (!(eps > 0) || !std::isfinite(eps))
        throw std::invalid_argument("mollify: eps > 0 required");
    return [atoms = data.atoms(), eps](double r, double z) {
        double rho = 0;
        for (const auto& a : atoms)
            rho += a.mass * mollifier(r - a.r, z - a.z, eps);
        return rho / (2 * std::numbers::pi * r);
    };
}

ParticleCloud
mollify(const MeasureData& data, double eps, const GridSpec& grid, Alpha alpha)
{
    validate(grid);
    if (!(eps > 0) || !std::isfinite(eps))
        throw std::invalid_argument("mollify: eps > 0 required");

    const Box& b = grid.box;
    const int need_nr = int(std::ceil(kCellsPerEps * (b.r_max - b.r_min) / eps));
    const int need_nz = int(std::ceil(kCellsPerEps * (b.z_max - b.z_min) / eps));
    if (grid.nr < need_nr || grid.nz < need_nz)
        throw UnderResolvedError(
            need_nr, need_nz,
            "mollify: eps = " + std::to_string(eps) + " under-resolved; need nr >= "
                + std::to_string(need_nr) + " and nz >= " + std::to_string(need_nz));
    for (const auto& a : data.atoms())
        if (a.mass != 0 && a.r <= eps)
            throw std::invalid_argument("mollify: atom at r = " + std::to_string(a.r)
                                        + " lies within eps of the axis");

    return init_from_profile(mollified_profile(data, eps), grid, alpha);
}

//---------------------------------------------------------------------------//
SweepReport uniform_bound_sweep(const MeasureData& data,
                                std::span<const double> eps_list,
                                Alpha alpha,
                                std::span<const Vec3> probes,
                                const GridSpec& grid,
                                double T,
                                const AdvanceControls& controls,
                                const kernel::KernelConstants& constants)
{
    for (std::size_t i = 1; i < eps_list.size(); ++i)
        if (!(eps_list[i] < eps_list[i - 1]))
            throw std::invalid_argument("sweep: eps_list must be strictly decreasing");

    const double tv = data.total_variation();
    const double a = alpha.value();
    const double l1_envelope = tv * (1 + 1e-2);

    SweepReport report;
    for (double eps : eps_list)
    {
        SweepRunSummary run{a, eps, false, {}, 0, 0};
        try
        {
            const ParticleCloud cloud0 = mollify(data, eps, grid, alpha);
            double l1 = 0;
            for (const auto& ring : cloud0.rings())
                l1 += std::abs(ring.g) * ring.vol;
            run.l1_discrete = l1;

            auto sink = [&](const ParticleCloud& cloud) {
                SweepRecord rec;
                rec.alpha = a;
                rec.eps = eps;
                rec.t = cloud.time();
                rec.rings = cloud.size();
                rec.l1_discrete = l1;
                rec.total_variation = tv;
                const NodeSet nodes(cloud);
                std::vector<double> speeds(probes.size());
                std::vector<GradSplit> grads(probes.size());
                parallel_for(probes.size(), [&](std::size_t i) {
                    speeds[i] = norm(eval_velocity(probes[i], nodes));
                    grads[i] = eval_grad_split(probes[i], nodes);
                });
                double worst = -1;
                for (std::size_t i = 0; i < probes.size(); ++i)
                {
                    const double envelope = l1_envelope / (a * a)
                                            * (constants.m1 * a
                                               + constants.m0 * radial(probes[i]));
                    rec.sup_speed = std::max(rec.sup_speed, speeds[i]);
                    rec.sup_grad_near = std::max(rec.sup_grad_near,
                                                 frobenius(grads[i].near));
                    rec.sup_grad_far = std::max(rec.sup_grad_far,
                                                frobenius(grads[i].far));
                    if (speeds[i] > envelope)
                        rec.within_bound = false;
                    if (envelope > 0 && speeds[i] / envelope > worst)
                    {
                        worst = speeds[i] / envelope;
                        rec.speed_bound = envelope;
                    }
                }
                if (!rec.within_bound)
                    report.bounded = false;
                run.sup_speed = std::max(run.sup_speed, rec.sup_speed);
                report.records.push_back(rec);
            };
            advance(cloud0, T, controls, sink);
            run.ok = true;
        }
        catch (const std::exception& e)
        {
            run.error = e.what();
            report.failures.push_back("eps=" + std::to_string(eps) + ": " + e.what());
        }
        report.runs.push_back(run);
    }

    double lo = INFINITY, hi = 0;
    for (const auto& run : report.runs)
        if (run.ok)
        {
            lo = std::min(lo, run.sup_speed);
            hi = std::max(hi, run.sup_speed);
        }
    report.speed_variation = hi > 0 ? (hi - lo) / hi : 0;
    return report;
}

} // namespace alpharing
