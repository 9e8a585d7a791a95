// Copyright 2026 The alpharing Authors
// SPDX-License-Identifier: Apache-2.0
#include "alpharing/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "alpharing/config.hpp"
#include "alpharing/diagnostics.hpp"
#include "alpharing/evolve.hpp"
#include "alpharing/kernel.hpp"
#include "alpharing/measure.hpp"
#include "alpharing/parallel.hpp"
#include "alpharing/snapshot.hpp"
#include "alpharing/velocity.hpp"

namespace fs = std::filesystem;

namespace alpharing
{
namespace
{
//! Failure whose message is already in "<what failed>" form.
class CommandError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

std::ofstream open_out(const fs::path& p)
{
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out)
        throw CommandError("cannot open '" + p.string() + "' for writing");
    return out;
}

std::string failed_names(std::span<const PropertyResult> results)
{
    std::string names;
    for (const auto& r : results)
        if (!r.pass)
            names += (names.empty() ? "" : ",") + r.property;
    return names;
}

//---------------------------------------------------------------------------//
int cmd_kernel_verify(std::ostream& out)
{
    out << "z,f,f_prime,zf,green_1\n";
    const Alpha one(1.0);
    std::vector<double> zs{0.0};
    for (int e = -40; e <= 30; ++e)
        zs.push_back(std::pow(10.0, e / 10.0));
    for (double z : zs)
        out << format_double(z) << ',' << format_double(kernel::f(z)) << ','
            << format_double(kernel::f_prime(z)) << ',' << format_double(z == 0 ? 0.0 : z * kernel::f(z))
            << ',' << format_double(kernel::green_alpha(z, one)) << '\n';

    const auto k = kernel::bound_scan();
    out << "\nconstant,value,argmax\n";
    out << "m0," << format_double(k.m0) << ',' << format_double(k.argmax_m0) << '\n';
    out << "m1," << format_double(k.m1) << ',' << format_double(k.argmax_m1) << '\n';
    out << "mf1," << format_double(k.mf1) << ',' << format_double(k.argmax_mf1) << '\n';
    out << "refinement_delta," << format_double(k.refinement_delta) << ",\n";
    return 0;
}

//---------------------------------------------------------------------------//
int cmd_simulate(const std::string& config_path, const std::string& out_dir, std::ostream& out)
{
    const SimulationConfig config = load_config(config_path);
    const fs::path dir = out_dir.empty() ? fs::path(config.output.directory)
                                         : fs::path(out_dir);
    fs::create_directories(dir);
    {
        auto f = open_out(dir / "config.json");
        f << serialize_config(config);
    }

    const ParticleCloud cloud0 = build_initial_cloud(config);
    SnapshotWriter snapshots((dir / snapshot_file_name(config.output.format)).string(),
                             config.output.format);
    auto diag = open_out(dir / "diagnostics.jsonl");
    std::vector<ParticleCloud> kept;
    auto sink = [&](const ParticleCloud& cloud) {
        snapshots.write(cloud);
        write_diagnostics_record(diag, make_diagnostics_record(cloud, config.diagnostics));
        kept.push_back(cloud);
    };
    const AdvanceResult result = advance(cloud0, config.T, config.controls(), sink);
    diag.flush();

    if (config.evolver == EvolverKind::picard)
    {
        auto f = open_out(dir / "picard.jsonl");
        for (const auto& w : result.picard.windows)
        {
            nlohmann::json j;
            j["t_start"] = w.t_start;
            j["window"] = w.window;
            j["contraction"] = w.contraction;
            j["iterations"] = w.iterations;
            j["monitor"] = w.monitor;
            j["converged"] = w.converged;
            f << j.dump() << '\n';
        }
    }

    out << "simulate: " << kept.size() << " snapshots, " << cloud0.size()
        << " rings, t = " << format_double(result.cloud.time())
        << ", axis clamps = " << result.history.clamp_count << '\n';

    if (config.diagnostics.verify)
    {
        const auto results = verify_snapshots(kept, config.verify_options());
        auto f = open_out(dir / "verify.json");
        f << verify_report_json(results);
        if (!all_pass(results))
            throw CommandError("verify failed: property " + failed_names(results));
    }
    return 0;
}

//---------------------------------------------------------------------------//
int cmd_verify(const std::string& run_dir, std::ostream& out)
{
    const fs::path dir(run_dir);
    const SimulationConfig config = load_config((dir / "config.json").string());
    fs::path snap;
    for (const char* name : {"snapshots.csv", "snapshots.jsonl"})
        if (fs::exists(dir / name))
            snap = dir / name;

    std::vector<PropertyResult> results;
    std::vector<ParticleCloud> clouds;
    try
    {
        if (snap.empty())
            throw SnapshotError("no snapshots file in '" + run_dir + "'");
        clouds = read_snapshots(snap.string(), Alpha(config.alpha), config.grid.n_theta);
        PropertyResult ok;
        ok.property = "snapshot_readable";
        ok.value = double(clouds.size());
        ok.pass = true;
        results.push_back(ok);
    }
    catch (const SnapshotError& e)
    {
        PropertyResult bad;
        bad.property = "snapshot_readable";
        bad.pass = false;
        bad.detail = e.what();
        results.push_back(bad);
    }
    if (!clouds.empty())
    {
        const auto more = verify_snapshots(clouds, config.verify_options());
        results.insert(results.end(), more.begin(), more.end());
    }
    out << verify_report_json(results);
    if (!all_pass(results))
        throw CommandError("property " + failed_names(results) + " failed");
    return 0;
}

//---------------------------------------------------------------------------//
std::vector<Vec3> read_points(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw CommandError("cannot open points file '" + path + "'");
    std::vector<Vec3> pts;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        if (line.empty() || line[0] == '#')
            continue;
        if (lineno == 1 && line.find_first_of("xyzXYZ") != std::string::npos)
            continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        Vec3 p;
        std::string extra;
        if (!(ss >> p.x >> p.y >> p.z) || (ss >> extra))
            throw CommandError(path + ":" + std::to_string(lineno)
                               + ": expected three numbers x,y,z");
        pts.push_back(p);
    }
    return pts;
}

int cmd_probe(const std::string& snapshot,
              const std::string& points_path,
              std::string config_path,
              double alpha_override,
              int n_theta_override,
              int index,
              std::ostream& out)
{
    double alpha = alpha_override;
    int n_theta = n_theta_override;
    if (alpha <= 0 || n_theta <= 0)
    {
        if (config_path.empty())
            config_path = (fs::path(snapshot).parent_path() / "config.json").string();
        const auto config = load_config(config_path);
        if (alpha <= 0)
            alpha = config.alpha;
        if (n_theta <= 0)
            n_theta = config.grid.n_theta;
    }
    const auto clouds = read_snapshots(snapshot, Alpha(alpha), n_theta);
    const long k = index < 0 ? long(clouds.size()) + index : index;
    if (k < 0 || k >= long(clouds.size()))
        throw CommandError("snapshot index " + std::to_string(index) + " out of range");
    const NodeSet nodes(clouds[std::size_t(k)]);
    const auto pts = read_points(points_path);

    std::vector<VelocitySample> samples(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
        samples[i] = eval_velocity_grad(pts[i], nodes);
    });
    out << "x,y,z,ux,uy,uz";
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            out << ",du" << "xyz"[i] << "_d" << "xyz"[j];
    out << ",swirl\n";
    for (std::size_t i = 0; i < pts.size(); ++i)
    {
        const auto& p = pts[i];
        const auto& s = samples[i];
        out << format_double(p.x) << ',' << format_double(p.y) << ','
            << format_double(p.z) << ',' << format_double(s.u.x) << ','
            << format_double(s.u.y) << ',' << format_double(s.u.z);
        for (const auto& row : s.grad)
            for (double v : row)
                out << ',' << format_double(v);
        out << ',';
        if (radial(p) > 0)
            out << format_double(swirl_component(p, nodes));
        else
            out << "nan";
        out << '\n';
    }
    return 0;
}

//---------------------------------------------------------------------------//
int cmd_sweep(const std::string& config_path, const std::string& out_dir, std::ostream& out)
{
    const SimulationConfig config = load_config(config_path);
    if (config.measure.atoms.empty())
        throw CommandError("sweep requires measure.atoms");
    const fs::path dir = out_dir.empty() ? fs::path(config.output.directory)
                                         : fs::path(out_dir);
    fs::create_directories(dir);
    {
        auto f = open_out(dir / "config.json");
        f << serialize_config(config);
    }

    const MeasureData data = build_measure(config);
    const auto probes = sweep_probes(config);
    std::vector<double> eps_list = config.measure.eps_list;
    if (eps_list.empty())
        eps_list.push_back(config.measure.eps);
    std::vector<double> alphas = config.measure.alpha_list;
    if (alphas.empty())
        alphas.push_back(config.alpha);
    const auto constants = kernel::bound_scan();

    auto records = open_out(dir / "sweep.jsonl");
    nlohmann::json summary;
    summary["total_variation"] = data.total_variation();
    summary["signed_mass"] = data.signed_mass();
    summary["probes"] = probes.size();
    summary["alphas"] = nlohmann::json::array();
    bool ok = true;
    for (double a : alphas)
    {
        const auto rep = uniform_bound_sweep(data, eps_list, Alpha(a), probes, config.grid,
                                             config.T, config.controls(), constants);
        for (const auto& r : rep.records)
        {
            nlohmann::json j;
            j["alpha"] = r.alpha;
            j["eps"] = r.eps;
            j["t"] = r.t;
            j["rings"] = r.rings;
            j["l1_discrete"] = r.l1_discrete;
            j["total_variation"] = r.total_variation;
            j["sup_speed"] = r.sup_speed;
            j["sup_grad_near"] = r.sup_grad_near;
            j["sup_grad_far"] = r.sup_grad_far;
            j["speed_bound"] = r.speed_bound;
            j["within_bound"] = r.within_bound;
            records << j.dump() << '\n';
        }
        nlohmann::json ja;
        ja["alpha"] = a;
        ja["bounded"] = rep.bounded;
        ja["speed_variation"] = rep.speed_variation;
        double l1_max = 0;
        ja["runs"] = nlohmann::json::array();
        for (const auto& run : rep.runs)
        {
            ja["runs"].push_back({{"eps", run.eps},
                                  {"ok", run.ok},
                                  {"error", run.error},
                                  {"sup_speed", run.sup_speed},
                                  {"l1_discrete", run.l1_discrete}});
            l1_max = std::max(l1_max, run.l1_discrete);
        }
        const bool l1_ok = l1_max <= data.total_variation() * 1.01;
        ja["l1_within_total_variation"] = l1_ok;
        ja["failures"] = rep.failures;
        summary["alphas"].push_back(ja);
        ok = ok && rep.bounded && rep.failures.empty() && l1_ok;

        out << "sweep: alpha = " << format_double(a)
            << ", speed variation = " << format_double(rep.speed_variation)
            << ", bounded = " << (rep.bounded ? "yes" : "no")
            << ", failures = " << rep.failures.size() << '\n';
    }
    summary["pass"] = ok;
    {
        auto f = open_out(dir / "sweep_summary.json");
        f << summary.dump(2) << '\n';
    }
    if (!ok)
        throw CommandError("sweep failed; see sweep_summary.json");
    return 0;
}
} // namespace

//---------------------------------------------------------------------------//
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Lagrangian vortex-ring simulator for the axisymmetric Euler-alpha "
                 "equations",
                 "alpharing"};
    app.require_subcommand(1);
    int workers = 0;
    app.add_option("--workers", workers, "worker threads (default: ALPHARING_WORKERS "
                                         "or hardware)")
        ->check(CLI::NonNegativeNumber);

    std::string config_path, out_dir, run_dir, snapshot, points, probe_config;
    double alpha_override = 0;
    int n_theta_override = 0;
    int index = -1;

    auto* simulate = app.add_subcommand("simulate", "run a simulation from a config");
    simulate->add_option("config", config_path, "config file")->required();
    simulate->add_option("--out", out_dir, "run directory (overrides output.directory)");

    auto* kverify = app.add_subcommand("kernel-verify", "print kernel table and constants");

    auto* verify = app.add_subcommand("verify", "check a run directory");
    verify->add_option("run-dir", run_dir, "run directory")->required();

    auto* probe = app.add_subcommand("probe", "evaluate u, grad u and swirl at points");
    probe->add_option("snapshot", snapshot, "snapshot file")->required();
    probe->add_option("points", points, "CSV of x,y,z")->required();
    probe->add_option("--config", probe_config, "config (default: next to snapshot)");
    probe->add_option("--alpha", alpha_override, "override alpha");
    probe->add_option("--n-theta", n_theta_override, "override n_theta");
    probe->add_option("--index", index, "snapshot index, negative from the end");

    auto* sweep = app.add_subcommand("sweep", "epsilon/alpha sweep of measure data");
    sweep->add_option("config", config_path, "config file")->required();
    sweep->add_option("--out", out_dir, "output directory");

    for (std::size_t i = 0; i < args.size(); ++i)
    {
        const std::string& a = args[i];
        if (a == "--workers")
            ++i;
        if (a.empty() || a[0] == '-')
            continue;
        if (!app.get_subcommand_no_throw(a))
        {
            err << "error: usage: unknown subcommand '" << a << "'\n" << app.help();
            return 2;
        }
        break;
    }

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try
    {
        app.parse(rev);
    }
    catch (const CLI::CallForHelp&)
    {
        out << app.help();
        return 0;
    }
    catch (const CLI::ParseError& e)
    {
        err << "error: usage: " << e.what() << '\n' << app.help();
        return 2;
    }

    if (workers > 0)
        set_worker_count(workers);

    std::string name = app.get_subcommands().front()->get_name();
    try
    {
        if (*simulate)
            return cmd_simulate(config_path, out_dir, out);
        if (*kverify)
            return cmd_kernel_verify(out);
        if (*verify)
            return cmd_verify(run_dir, out);
        if (*probe)
            return cmd_probe(snapshot, points, probe_config, alpha_override,
                             n_theta_override, index, out);
        if (*sweep)
            return cmd_sweep(config_path, out_dir, out);
    }
    catch (const std::exception& e)
    {
        err << "error: " << name << ": " << e.what() << '\n';
        return 1;
    }
    err << "error: usage: unknown subcommand\n" << app.help();
    return 2;
}

} // namespace alpharing
