// Copyright 2026 The alpharing Authors
// SPDX-License-Identifier: Apache-2.0
//! \file acceptance.cpp
//! Acceptance checks. Prints one PASS/FAIL line per criterion; with
//! arguments, runs only the listed criterion numbers.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "alpharing/cli.hpp"
#include "alpharing/config.hpp"
#include "alpharing/diagnostics.hpp"
#include "alpharing/evolve.hpp"
#include "alpharing/kernel.hpp"
#include "alpharing/measure.hpp"
#include "alpharing/parallel.hpp"
#include "alpharing/velocity.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace alpharing;
namespace o = alpharing::oracle;
namespace fs = std::filesystem;

namespace
{
struct Outcome
{
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok)
        {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + ("failed: " + what);
        }
    }
    void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

class Stopwatch
{
  public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
            .count();
    }

  private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

double rel(double a, long double b) { return double(std::abs((a - b) / b)); }

//---------------------------------------------------------------------------//
Outcome kernel_exactness()
{
    Outcome out;
    const double e_f = rel(kernel::f(0), o::f_series(0));
    const double e_fp = rel(kernel::f_prime(0), o::f_prime_series(0));
    double e_g = 0;
    for (double a : {0.01, 0.1, 1.0})
        e_g = std::max(e_g, rel(kernel::green_alpha(0, Alpha(a)),
                                o::green_series_unit(0) / (4 * o::kPi * a)));
    // Right limits: the smallest positive arguments.
    double e_lim = 0;
    for (double z : {1e-300, 1e-12, 1e-6})
    {
        e_lim = std::max(e_lim, rel(kernel::f(z), o::f_series(z)));
        e_lim = std::max(e_lim, rel(kernel::f_prime(z), o::f_prime_series(z)));
        e_lim = std::max(e_lim, rel(kernel::green_alpha(z * 0.1, Alpha(0.1)),
                                    o::green_series_unit(z) / (4 * o::kPi * 0.1L)));
    }
    out.require(e_f <= 1e-10, "f(0+) rel err " + fmt(e_f));
    out.require(e_fp <= 1e-10, "f'(0+) rel err " + fmt(e_fp));
    out.require(e_g <= 1e-10, "G(0+) rel err " + fmt(e_g));
    out.require(e_lim <= 1e-10, "right limits rel err " + fmt(e_lim));

    std::ostringstream sink, err;
    const Stopwatch sw;
    const int code = cli_main({"kernel-verify"}, sink, err);
    const double t = sw.seconds();
    out.require(code == 0, "kernel-verify exit code");
    out.require(t < 1.0, "kernel-verify took " + fmt(t) + " s");
    out.note("max rel err " + fmt(std::max({e_f, e_fp, e_g, e_lim})) + ", kernel-verify "
             + fmt(t) + " s");
    return out;
}

//---------------------------------------------------------------------------//
Outcome alpha_limit()
{
    Outcome out;
    double worst = 0;
    for (double a : {1e-3, 0.01, 0.1, 1.0, 7.0})
    {
        const double s = 20 * a;
        const double classical = -1 / (4 * std::numbers::pi * s * s);
        const double dev = std::abs(kernel::f_alpha(s, Alpha(a)) - classical) / std::abs(classical);
        const long double analytic = 21 * std::exp(-20.0L);
        worst = std::max(worst, dev);
        out.require(dev <= 5e-8, "alpha " + fmt(a) + " deviation " + fmt(dev));
        out.require(rel(dev, analytic) <= 1e-6,
                    "alpha " + fmt(a) + " deviation differs from 21 e^-20");
    }
    out.note("relative deviation " + fmt(worst) + " (21 e^-20 = 4.33e-08)");
    return out;
}

//---------------------------------------------------------------------------//
Outcome divergence_free()
{
    Outcome out;
    const Stopwatch sw;
    const auto cloud = test::random_cloud(500, 0.1, 16, 2026);
    const NodeSet nodes(cloud);
    const auto pts = ball_probes(cloud, 100, 0.5, 11);
    std::vector<double> ratio(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
        const Mat3 g = eval_grad(pts[i], nodes);
        ratio[i] = std::abs(trace(g)) / frobenius(g);
    });
    double worst = 0;
    for (double r : ratio)
        worst = std::max(worst, r);
    const double t = sw.seconds();
    out.require(pts.size() == 100, "probe count");
    out.require(worst <= 1e-10, "|tr| / |grad| = " + fmt(worst));
    out.require(t < 10, "took " + fmt(t) + " s");
    out.note("max |tr|/|grad| " + fmt(worst) + " over " + std::to_string(pts.size())
             + " points, " + fmt(t) + " s");
    return out;
}

//---------------------------------------------------------------------------//
Outcome swirl_free()
{
    Outcome out;
    const Stopwatch sw;
    const double tol = 1e-8;
    const std::vector<ParticleCloud> clouds{
        test::gaussian_ring_cloud(0.1, 16, 32, 10.0),
        test::random_cloud(300, 0.05, 32, 77, 0.2, 1.2, 0.5)};
    double worst = 0;
    std::size_t probes = 0;
    for (const auto& c : clouds)
    {
        double r_max = 0;
        for (const auto& ring : c.rings())
            r_max = std::max(r_max, ring.r);
        const double clear = swirl_probe_clearance(r_max, 32, tol);
        const auto pts = far_probes(c, 100, clear, 5);
        const NodeSet nodes(c);
        std::vector<double> ratio(pts.size());
        parallel_for(pts.size(), [&](std::size_t i) {
            const Vec3 u = eval_velocity(pts[i], nodes);
            ratio[i] = std::abs(swirl_component(pts[i], nodes)) / norm(u);
        });
        for (double r : ratio)
            worst = std::max(worst, r);
        probes += pts.size();
    }
    const double t = sw.seconds();
    out.require(worst <= tol, "|u_theta|/|u| = " + fmt(worst));
    out.require(t < 10, "took " + fmt(t) + " s");
    out.note("max |u_theta|/|u| " + fmt(worst) + " over " + std::to_string(probes)
             + " probes, " + fmt(t) + " s");
    return out;
}

//---------------------------------------------------------------------------//
Outcome thin_ring_limit()
{
    Outcome out;
    const double a = 0.01, R = 1, w = 1;
    const double gamma = w / (2 * std::numbers::pi);
    double worst = 0, spread = 0, off_axis = 0;
    for (double zeta : {0.0, 0.5, 1.0})
    {
        const double classical = o::classical_axis_speed(gamma, R, zeta);
        double prev = NAN;
        for (int n : {32, 64})
        {
            const auto c = test::single_ring(R, 0, w, a, n);
            const double uz = eval_velocity(Vec3{0, 0, zeta}, c).z;
            const double e = std::abs(uz - classical) / std::abs(classical);
            worst = std::max(worst, e);
            if (!std::isnan(prev))
                spread = std::max(spread, std::abs(uz - prev) / std::abs(classical));
            prev = uz;
        }
    }
    // Off the axis the discrete ring converges to the continuous one.
    const auto fa = [a](double s) { return kernel::f_alpha(s, Alpha(a)); };
    for (const Vec3& x : {Vec3{0.5, 0, 0.5}, Vec3{0.3, 0.2, 1.0}})
    {
        const auto ref = o::ring_velocity(x.x, x.y, x.z, R, 0, w, fa);
        const Vec3 u = eval_velocity(x, test::single_ring(R, 0, w, a, 64));
        off_axis = std::max(off_axis, norm(u - Vec3{ref[0], ref[1], ref[2]})
                                          / std::hypot(ref[0], ref[1], ref[2]));
    }
    out.require(worst <= 0.01, "on-axis rel err " + fmt(worst));
    out.require(spread <= 1e-6, "n_theta 32 vs 64 differ by " + fmt(spread));
    out.require(off_axis <= 0.01, "off-axis rel err vs continuous ring " + fmt(off_axis));
    out.note("on-axis rel err " + fmt(worst) + ", n_theta spread " + fmt(spread)
             + ", off-axis " + fmt(off_axis));
    return out;
}

//---------------------------------------------------------------------------//
ParticleCloud cloud_200()
{
    GridSpec grid;
    grid.box = {0.4, 1.6, -0.6, 0.6};
    grid.nr = 10;
    grid.nz = 20;
    grid.n_theta = 16;
    const auto profile = make_profile("gaussian_ring", {{"amplitude", 10.0}, {"sigma", 0.1}});
    return init_from_profile(profile, grid, Alpha(0.1));
}

Outcome transport_invariants()
{
    Outcome out;
    const Stopwatch sw;
    const auto c0 = cloud_200();
    out.require(c0.size() == 200, "cloud has " + std::to_string(c0.size()) + " rings");

    AdvanceControls ctl;
    ctl.dt = 0.005;
    std::size_t mismatches = 0, snaps = 0;
    (void)advance(c0, 200 * ctl.dt, ctl, [&](const ParticleCloud& s) {
        ++snaps;
        for (std::size_t j = 0; j < s.size(); ++j)
            if (s.rings()[j].g != c0.rings()[j].g || s.rings()[j].vol != c0.rings()[j].vol)
                ++mismatches;
    });
    out.require(snaps == 201, "snapshot count " + std::to_string(snaps));
    out.require(mismatches == 0, std::to_string(mismatches) + " g/vol mismatches");

    const double T = 0.5;
    const SpaceTimeBump phi({0.0, T}, {1.0, 0.0, -0.1}, 0.5);
    std::vector<ResolutionSample> runs;
    std::string errs;
    for (int steps : {25, 50, 100, 200})
    {
        AdvanceControls c;
        c.dt = T / steps;
        const auto res = advance(c0, T, c);
        const double r = weak_form_residual(res.history, c0, phi);
        runs.push_back({c.dt, {r}});
        errs += (errs.empty() ? "" : ", ") + fmt(r);
    }
    const std::vector<double> zero{0.0};
    const auto est = order_estimate(runs, OrderReference::exact, zero);
    const double t = sw.seconds();
    out.require(est.order >= 3.5, "weak-form order " + fmt(est.order));
    out.require(est.monotone, "residuals not monotone");
    out.require(t < 300, "took " + fmt(t) + " s");
    out.note("g/vol bit-identical over 200 steps; residuals " + errs + "; order "
             + fmt(est.order) + "; " + fmt(t) + " s");
    return out;
}

//---------------------------------------------------------------------------//
Outcome picard_fidelity()
{
    Outcome out;
    const Stopwatch sw;
    GridSpec grid;
    grid.box = {0.4, 1.6, -0.6, 0.6};
    grid.nr = grid.nz = 10;
    grid.n_theta = 16;
    const auto c0 = init_from_profile(
        make_profile("gaussian_ring", {{"amplitude", 10.0}, {"sigma", 0.1}}), grid, Alpha(0.1));
    out.require(c0.size() == 100, "cloud has " + std::to_string(c0.size()) + " rings");

    const double k = contraction_estimate(c0);
    PicardOptions opts;
    opts.window = 0.5 / k;
    opts.nodes = 16;
    opts.tol = 1e-12;
    const auto pic = picard_solve(c0, opts);
    out.require(pic.report.converged, "picard did not converge");
    out.require(k * opts.window <= 0.5, "k T1 = " + fmt(k * opts.window));

    const auto& m = pic.report.monitor;
    const double floor = 1e3 * std::numeric_limits<double>::epsilon();
    double worst_ratio = 0;
    for (std::size_t i = 2; i < m.size(); ++i)
        if (m[i - 1] > floor)
            worst_ratio = std::max(worst_ratio, m[i] / m[i - 1]);
    out.require(worst_ratio <= 0.5, "monitor ratio " + fmt(worst_ratio));

    // RK4 at the Picard node spacing, its error estimated from a dt/2 run.
    const double h = opts.window / opts.nodes;
    AdvanceControls c1, c2;
    c1.dt = h;
    c2.dt = h / 2;
    const auto r1 = advance(c0, opts.window, c1).history;
    const auto r2 = advance(c0, opts.window, c2).history;
    double diff = 0, est = 0;
    for (std::size_t kk = 0; kk < r1.nodes(); ++kk)
        for (std::size_t j = 0; j < c0.size(); ++j)
        {
            const auto& p = pic.history.positions[kk][j];
            const auto& a = r1.positions[kk][j];
            const auto& b = r2.positions[2 * kk][j];
            diff = std::max(diff, std::hypot(p.r - a.r, p.z - a.z));
            est = std::max(est, std::hypot(a.r - b.r, a.z - b.z) * 16.0 / 15.0);
        }
    const double bound = std::max(opts.tol, 10 * est);
    const double t = sw.seconds();
    out.require(diff <= bound, "picard vs rk4 " + fmt(diff) + " > " + fmt(bound));
    out.require(t < 120, "took " + fmt(t) + " s");
    out.note("k T1 = " + fmt(k * opts.window) + ", " + std::to_string(m.size())
             + " iterates, max ratio " + fmt(worst_ratio) + ", picard-rk4 " + fmt(diff)
             + " vs bound " + fmt(bound) + ", " + fmt(t) + " s");
    return out;
}

//---------------------------------------------------------------------------//
Outcome velocity_bound()
{
    Outcome out;
    const Stopwatch sw;
    const auto k = kernel::bound_scan();
    double worst = 0;
    for (double a : {0.05, 0.2})
    {
        std::vector<ParticleCloud> clouds{
            test::gaussian_ring_cloud(a, 12, 16, 10.0),
            test::random_cloud(400, a, 16, 8),
            init_from_profile(make_profile("gaussian_ring_pair",
                                           {{"amplitude", -3.0}, {"radius2", 0.7}}),
                              GridSpec{{0.1, 1.7, -0.7, 1.2}, 16, 16, 16}, Alpha(a))};
        for (std::size_t ci = 0; ci < clouds.size(); ++ci)
        {
            std::mt19937_64 rng(100 + ci);
            std::uniform_real_distribution<double> u(-2.5, 2.5);
            std::vector<Vec3> pts(1000);
            for (auto& p : pts)
                p = {u(rng), u(rng), u(rng)};
            // Half the points sit close to the nodes, where |u| peaks.
            const auto near = ball_probes(clouds[ci], 500, 2 * a, 200 + ci);
            std::copy(near.begin(), near.end(), pts.begin());
            const auto rep = velocity_bound_check(clouds[ci], pts, k);
            out.require(rep.holds && rep.points == 1000,
                        "cloud " + std::to_string(ci) + " alpha " + fmt(a) + " ratio "
                            + fmt(rep.worst_ratio));
            worst = std::max(worst, rep.worst_ratio);
        }
    }
    const double t = sw.seconds();
    out.require(t < 60, "took " + fmt(t) + " s");
    out.note("worst |u|/bound " + fmt(worst) + " over 3 clouds x 2 alphas x 1000 points, "
             + fmt(t) + " s");
    return out;
}

//---------------------------------------------------------------------------//
Outcome measure_pathway()
{
    Outcome out;
    const Stopwatch sw;
    const auto cfg = load_config((test::source_dir() / "configs/measure_sweep.json").string());
    const auto data = build_measure(cfg);
    const auto probes = sweep_probes(cfg);
    const auto rep = uniform_bound_sweep(data, cfg.measure.eps_list, Alpha(cfg.alpha), probes,
                                         cfg.grid, cfg.T, cfg.controls(), kernel::bound_scan());
    out.require(cfg.alpha == 0.5 && cfg.grid.nr == 128 && cfg.grid.nz == 128
                    && cfg.grid.n_theta == 16,
                "config does not match the criterion setup");
    out.require(cfg.measure.eps_list == std::vector<double>{0.2, 0.1, 0.05}, "eps list");
    out.require(rep.failures.empty(), std::to_string(rep.failures.size()) + " runs failed");
    std::string l1s;
    for (const auto& run : rep.runs)
    {
        out.require(run.l1_discrete <= data.total_variation() * 1.01,
                    "eps " + fmt(run.eps) + " L1 " + fmt(run.l1_discrete));
        l1s += (l1s.empty() ? "" : ", ") + fmt(run.l1_discrete);
    }
    out.require(rep.speed_variation < 0.1, "speed variation " + fmt(rep.speed_variation));
    out.require(rep.bounded, "speed exceeded the eps-independent envelope");
    const double t = sw.seconds();
    out.require(t < 600, "took " + fmt(t) + " s");
    out.note("L1 " + l1s + " vs TV " + fmt(data.total_variation()) + ", speed variation "
             + fmt(rep.speed_variation) + ", " + fmt(t) + " s");
    return out;
}

//---------------------------------------------------------------------------//
std::map<std::string, std::string> read_tree(const fs::path& root)
{
    std::map<std::string, std::string> files;
    for (const auto& e : fs::recursive_directory_iterator(root))
        if (e.is_regular_file())
        {
            std::ifstream in(e.path(), std::ios::binary);
            std::ostringstream ss;
            ss << in.rdbuf();
            files[fs::relative(e.path(), root).string()] = ss.str();
        }
    return files;
}

Outcome determinism()
{
    Outcome out;
    const auto base = test::scratch("determinism");
    const auto cfg = (test::source_dir() / "configs/thin_ring.json").string();
    std::vector<std::map<std::string, std::string>> trees;
    const int saved = worker_count();
    for (const char* workers : {"1", "3", "1"})
    {
        const auto dir = base / (std::string("w") + workers + "_" + std::to_string(trees.size()));
        std::ostringstream sink, err;
        const int code =
            cli_main({"--workers", workers, "simulate", cfg, "--out", dir.string()}, sink, err);
        out.require(code == 0, "simulate with " + std::string(workers) + " workers: " + err.str());
        trees.push_back(read_tree(dir));
    }
    set_worker_count(saved);
    for (std::size_t i = 1; i < trees.size(); ++i)
        out.require(trees[i] == trees[0], "run directory " + std::to_string(i) + " differs");
    out.require(trees[0].size() >= 4, "run directory has " + std::to_string(trees[0].size())
                                          + " files");
    std::size_t bytes = 0;
    for (const auto& [name, body] : trees[0])
        bytes += body.size();
    out.note(std::to_string(trees[0].size()) + " files, " + std::to_string(bytes)
             + " bytes identical across 1, 3, 1 workers");
    return out;
}
} // namespace

int main(int argc, char** argv)
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"kernel exactness", kernel_exactness},
        {"alpha->0 kernel consistency", alpha_limit},
        {"divergence-free reconstruction", divergence_free},
        {"swirl-free reconstruction", swirl_free},
        {"thin-ring classical limit", thin_ring_limit},
        {"transport invariants", transport_invariants},
        {"picard fidelity", picard_fidelity},
        {"velocity bound", velocity_bound},
        {"measure pathway", measure_pathway},
        {"determinism", determinism},
    };
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i)
    {
        const int n = std::atoi(argv[i]);
        if (n < 1 || n > int(criteria.size()))
        {
            std::fprintf(stderr, "usage: %s [criterion 1-%zu ...]\n", argv[0], criteria.size());
            return 2;
        }
        selected.push_back(n);
    }
    if (selected.empty())
        for (int i = 1; i <= int(criteria.size()); ++i)
            selected.push_back(i);

    int failures = 0;
    for (int n : selected)
    {
        const auto& [name, fn] = criteria[std::size_t(n - 1)];
        Outcome o;
        try
        {
            o = fn();
        }
        catch (const std::exception& e)
        {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", n, name.c_str(),
                    o.detail.c_str());
        std::fflush(stdout);
        failures += o.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
