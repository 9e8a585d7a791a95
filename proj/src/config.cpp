// Copyright 2026 The alpharing Authors
// SPDX-License-Identifier: Apache-2.0
#include "alpharing/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "alpharing/measure.hpp"

namespace alpharing
{
using nlohmann::json;

namespace
{
[[noreturn]] void fail(const std::string& msg)
{
    throw ConfigError("config: " + msg);
}

std::string join(const std::string& path, const std::string& key)
{
    return path.empty() ? key : path + "." + key;
}

void check_keys(const json& obj,
                const std::string& path,
                std::initializer_list<const char*> allowed)
{
    if (!obj.is_object())
        fail((path.empty() ? std::string("top level") : path) + " must be an object");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& item : obj.items())
        if (!ok.count(item.key()))
            fail("unknown key '" + join(path, item.key()) + "'");
}

double get_number(const json& v, const std::string& path)
{
    if (!v.is_number())
        fail(path + " must be a number");
    return v.get<double>();
}

int get_int(const json& v, const std::string& path)
{
    if (!v.is_number_integer())
        fail(path + " must be an integer");
    return v.get<int>();
}

template <class T>
void read(const json& obj, const std::string& path, const char* key, T& out)
{
    if (!obj.contains(key))
        return;
    const json& v = obj.at(key);
    const std::string p = join(path, key);
    if constexpr (std::is_same_v<T, double>)
        out = get_number(v, p);
    else if constexpr (std::is_same_v<T, int>)
        out = get_int(v, p);
    else if constexpr (std::is_same_v<T, bool>)
    {
        if (!v.is_boolean())
            fail(p + " must be a boolean");
        out = v.get<bool>();
    }
    else if constexpr (std::is_same_v<T, std::string>)
    {
        if (!v.is_string())
            fail(p + " must be a string");
        out = v.get<std::string>();
    }
    else if constexpr (std::is_same_v<T, std::vector<double>>)
    {
        if (!v.is_array())
            fail(p + " must be a list of numbers");
        out.clear();
        for (std::size_t i = 0; i < v.size(); ++i)
            out.push_back(get_number(v[i], p + "[" + std::to_string(i) + "]"));
    }
}

std::vector<double> fixed_list(const json& v, const std::string& path, std::size_t n)
{
    if (!v.is_array() || v.size() != n)
        fail(path + " must be a list of " + std::to_string(n) + " numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(get_number(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

const char* evolver_name(EvolverKind k)
{
    return k == EvolverKind::rk4 ? "rk4" : "picard";
}

const char* interpolation_name(TimeInterpolation t)
{
    return t == TimeInterpolation::linear ? "linear" : "cubic_hermite";
}

const char* initial_name(InitialKind k)
{
    switch (k)
    {
    case InitialKind::profile:
        return "profile";
    case InitialKind::rings:
        return "rings";
    case InitialKind::measure:
        break;
    }
    return "measure";
}

bool finite_positive(double v)
{
    return std::isfinite(v) && v > 0;
}
} // namespace

//---------------------------------------------------------------------------//
AdvanceControls SimulationConfig::controls() const
{
    AdvanceControls c;
    c.evolver = evolver;
    c.dt = dt;
    c.snapshot_every = snapshot_every;
    c.picard = picard;
    return c;
}

VerifyOptions SimulationConfig::verify_options() const
{
    VerifyOptions v;
    v.probe_count = diagnostics.probe_count;
    v.seed = seed;
    v.swirl_tolerance = diagnostics.swirl_tolerance;
    return v;
}

bool operator==(const SimulationConfig& a, const SimulationConfig& b)
{
    auto picard_eq = [](const PicardOptions& x, const PicardOptions& y) {
        return x.window == y.window && x.nodes == y.nodes && x.tol == y.tol
               && x.max_iter == y.max_iter && x.interpolation == y.interpolation;
    };
    return a.schema_version == b.schema_version && a.alpha == b.alpha
           && a.initial == b.initial && a.grid == b.grid && a.evolver == b.evolver
           && a.dt == b.dt && a.T == b.T && a.snapshot_every == b.snapshot_every
           && picard_eq(a.picard, b.picard) && a.measure == b.measure
           && a.diagnostics == b.diagnostics && a.output == b.output
           && a.seed == b.seed;
}

//---------------------------------------------------------------------------//
void validate(const SimulationConfig& c)
{
    if (c.schema_version != kSchemaVersion)
        fail("schema_version " + std::to_string(c.schema_version)
             + " unsupported (expected " + std::to_string(kSchemaVersion) + ")");
    if (!finite_positive(c.alpha))
        fail("alpha: α > 0 required");
    if (!(c.grid.nr >= 1 && c.grid.nz >= 1))
        fail("grid: nr >= 1 and nz >= 1 required");
    if (!(c.grid.n_theta >= 4 && c.grid.n_theta % 2 == 0))
        fail("grid.n_theta: even and >= 4 required");
    const Box& b = c.grid.box;
    if (!(b.r_min >= 0 && b.r_max > b.r_min && b.z_max > b.z_min)
        || !std::isfinite(b.r_max) || !std::isfinite(b.z_min) || !std::isfinite(b.z_max))
        fail("grid.box: 0 <= r_min < r_max and z_min < z_max required");
    if (!finite_positive(c.dt))
        fail("dt: dt > 0 required");
    if (!(std::isfinite(c.T) && c.T >= 0))
        fail("T: T >= 0 required");
    if (c.snapshot_every < 1)
        fail("snapshot_every: >= 1 required");
    if (!finite_positive(c.picard.tol))
        fail("picard.tol: > 0 required");
    if (c.picard.max_iter < 1)
        fail("picard.max_iter: >= 1 required");
    if (c.picard.nodes < 1)
        fail("picard.nodes_per_window: >= 1 required");

    if (c.initial.kind == InitialKind::profile)
    {
        try
        {
            (void)make_profile(c.initial.profile, c.initial.params);
        }
        catch (const std::invalid_argument& e)
        {
            fail(std::string("initial: ") + e.what());
        }
    }
    for (std::size_t i = 0; i < c.initial.rings.size(); ++i)
    {
        const auto& r = c.initial.rings[i];
        if (!(r.r >= 0) || !std::isfinite(r.z) || !std::isfinite(r.g)
            || !finite_positive(r.vol))
            fail("initial.rings[" + std::to_string(i)
                 + "]: r >= 0, finite z and g, vol > 0 required");
    }

    const auto& m = c.measure;
    if (!finite_positive(m.eps))
        fail("measure.eps: eps > 0 required");
    for (std::size_t i = 0; i < m.eps_list.size(); ++i)
    {
        if (!finite_positive(m.eps_list[i]))
            fail("measure.eps_list: eps > 0 required");
        if (i > 0 && !(m.eps_list[i] < m.eps_list[i - 1]))
            fail("measure.eps_list: must be strictly decreasing");
    }
    for (double a : m.alpha_list)
        if (!finite_positive(a))
            fail("measure.alpha_list: α > 0 required");
    for (const auto& a : m.atoms)
        if (!(a.r >= 0) || !std::isfinite(a.z) || !std::isfinite(a.mass))
            fail("measure.atoms: r >= 0 and finite z, m required");
    if (!finite_positive(m.probe_distance))
        fail("measure.probe_distance: > 0 required");
    if (c.initial.kind == InitialKind::measure)
        for (const auto& a : m.atoms)
            if (!b.contains(a.r, a.z))
                fail("measure.atoms: atom outside grid.box");

    const auto& d = c.diagnostics;
    if (d.probe_count < 1)
        fail("diagnostics.probe_count: >= 1 required");
    if (!finite_positive(d.swirl_tolerance))
        fail("diagnostics.swirl_tolerance: > 0 required");
    if (d.energy_nr < 1 || d.energy_nz < 1)
        fail("diagnostics.energy_nr, energy_nz: >= 1 required");
    if (!(d.energy_margin >= 0))
        fail("diagnostics.energy_margin: >= 0 required");
    if (c.output.directory.empty())
        fail("output.directory: must not be empty");
}

//---------------------------------------------------------------------------//
SimulationConfig parse_config(const std::string& text)
{
    json j;
    try
    {
        j = json::parse(text);
    }
    catch (const json::parse_error& e)
    {
        fail(std::string("malformed JSON: ") + e.what());
    }
    check_keys(j, "",
               {"schema_version", "alpha", "initial", "grid", "evolver", "dt", "T",
                "snapshot_every", "picard", "measure", "diagnostics", "output", "seed"});

    SimulationConfig c;
    read(j, "", "schema_version", c.schema_version);
    read(j, "", "alpha", c.alpha);
    read(j, "", "dt", c.dt);
    read(j, "", "T", c.T);
    read(j, "", "snapshot_every", c.snapshot_every);
    if (j.contains("seed"))
    {
        if (!j["seed"].is_number_unsigned())
            fail("seed must be a non-negative integer");
        c.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("evolver"))
    {
        std::string name;
        read(j, "", "evolver", name);
        if (name == "rk4")
            c.evolver = EvolverKind::rk4;
        else if (name == "picard")
            c.evolver = EvolverKind::picard;
        else
            fail("evolver must be 'rk4' or 'picard'");
    }

    if (j.contains("initial"))
    {
        const json& ji = j["initial"];
        check_keys(ji, "initial", {"type", "name", "params", "rings"});
        std::string type = "profile";
        read(ji, "initial", "type", type);
        if (type == "profile")
            c.initial.kind = InitialKind::profile;
        else if (type == "rings")
            c.initial.kind = InitialKind::rings;
        else if (type == "measure")
            c.initial.kind = InitialKind::measure;
        else
            fail("initial.type must be 'profile', 'rings' or 'measure'");
        read(ji, "initial", "name", c.initial.profile);
        if (ji.contains("params"))
        {
            const json& jp = ji["params"];
            if (!jp.is_object())
                fail("initial.params must be an object");
            for (const auto& item : jp.items())
                c.initial.params[item.key()]
                    = get_number(item.value(), "initial.params." + item.key());
        }
        if (ji.contains("rings"))
        {
            const json& jr = ji["rings"];
            if (!jr.is_array())
                fail("initial.rings must be a list");
            for (std::size_t i = 0; i < jr.size(); ++i)
            {
                const std::string p = "initial.rings[" + std::to_string(i) + "]";
                check_keys(jr[i], p, {"r", "z", "g", "vol"});
                RingSpec r;
                read(jr[i], p, "r", r.r);
                read(jr[i], p, "z", r.z);
                read(jr[i], p, "g", r.g);
                read(jr[i], p, "vol", r.vol);
                c.initial.rings.push_back(r);
            }
        }
    }

    if (j.contains("grid"))
    {
        const json& jg = j["grid"];
        check_keys(jg, "grid", {"box", "nr", "nz", "n_theta"});
        if (jg.contains("box"))
        {
            const auto b = fixed_list(jg["box"], "grid.box", 4);
            c.grid.box = {b[0], b[1], b[2], b[3]};
        }
        read(jg, "grid", "nr", c.grid.nr);
        read(jg, "grid", "nz", c.grid.nz);
        read(jg, "grid", "n_theta", c.grid.n_theta);
    }

    if (j.contains("picard"))
    {
        const json& jp = j["picard"];
        check_keys(jp, "picard", {"tol", "max_iter", "nodes_per_window", "interpolation"});
        read(jp, "picard", "tol", c.picard.tol);
        read(jp, "picard", "max_iter", c.picard.max_iter);
        read(jp, "picard", "nodes_per_window", c.picard.nodes);
        if (jp.contains("interpolation"))
        {
            std::string name;
            read(jp, "picard", "interpolation", name);
            if (name == "linear")
                c.picard.interpolation = TimeInterpolation::linear;
            else if (name == "cubic_hermite")
                c.picard.interpolation = TimeInterpolation::cubic_hermite;
            else
                fail("picard.interpolation must be 'linear' or 'cubic_hermite'");
        }
    }

    if (j.contains("measure"))
    {
        const json& jm = j["measure"];
        check_keys(jm, "measure",
                   {"atoms", "eps", "eps_list", "alpha_list", "probes", "probe_distance"});
        if (jm.contains("atoms"))
        {
            if (!jm["atoms"].is_array())
                fail("measure.atoms must be a list of [r, z, m]");
            for (std::size_t i = 0; i < jm["atoms"].size(); ++i)
            {
                const auto a = fixed_list(jm["atoms"][i],
                                          "measure.atoms[" + std::to_string(i) + "]", 3);
                c.measure.atoms.push_back({a[0], a[1], a[2]});
            }
        }
        read(jm, "measure", "eps", c.measure.eps);
        read(jm, "measure", "eps_list", c.measure.eps_list);
        read(jm, "measure", "alpha_list", c.measure.alpha_list);
        read(jm, "measure", "probe_distance", c.measure.probe_distance);
        if (jm.contains("probes"))
        {
            if (!jm["probes"].is_array())
                fail("measure.probes must be a list of [x, y, z]");
            for (std::size_t i = 0; i < jm["probes"].size(); ++i)
            {
                const auto p = fixed_list(jm["probes"][i],
                                          "measure.probes[" + std::to_string(i) + "]", 3);
                c.measure.probes.push_back({p[0], p[1], p[2]});
            }
        }
    }

    if (j.contains("diagnostics"))
    {
        const json& jd = j["diagnostics"];
        check_keys(jd, "diagnostics",
                   {"verify", "energy", "energy_nr", "energy_nz", "energy_margin",
                    "probe_count", "swirl_tolerance"});
        read(jd, "diagnostics", "verify", c.diagnostics.verify);
        read(jd, "diagnostics", "energy", c.diagnostics.energy);
        read(jd, "diagnostics", "energy_nr", c.diagnostics.energy_nr);
        read(jd, "diagnostics", "energy_nz", c.diagnostics.energy_nz);
        read(jd, "diagnostics", "energy_margin", c.diagnostics.energy_margin);
        read(jd, "diagnostics", "probe_count", c.diagnostics.probe_count);
        read(jd, "diagnostics", "swirl_tolerance", c.diagnostics.swirl_tolerance);
    }

    if (j.contains("output"))
    {
        const json& jo = j["output"];
        check_keys(jo, "output", {"directory", "format"});
        read(jo, "output", "directory", c.output.directory);
        if (jo.contains("format"))
        {
            std::string f;
            read(jo, "output", "format", f);
            if (f == "csv")
                c.output.format = OutputFormat::csv;
            else if (f == "jsonl")
                c.output.format = OutputFormat::jsonl;
            else
                fail("output.format must be 'csv' or 'jsonl'");
        }
    }

    validate(c);
    return c;
}

SimulationConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        fail("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const SimulationConfig& c)
{
    json j;
    j["schema_version"] = c.schema_version;
    j["alpha"] = c.alpha;

    json ji;
    ji["type"] = initial_name(c.initial.kind);
    ji["name"] = c.initial.profile;
    ji["params"] = json::object();
    for (const auto& [k, v] : c.initial.params)
        ji["params"][k] = v;
    ji["rings"] = json::array();
    for (const auto& r : c.initial.rings)
        ji["rings"].push_back({{"r", r.r}, {"z", r.z}, {"g", r.g}, {"vol", r.vol}});
    j["initial"] = ji;

    const Box& b = c.grid.box;
    j["grid"] = {{"box", {b.r_min, b.r_max, b.z_min, b.z_max}},
                 {"nr", c.grid.nr},
                 {"nz", c.grid.nz},
                 {"n_theta", c.grid.n_theta}};
    j["evolver"] = evolver_name(c.evolver);
    j["dt"] = c.dt;
    j["T"] = c.T;
    j["snapshot_every"] = c.snapshot_every;
    j["picard"] = {{"tol", c.picard.tol},
                   {"max_iter", c.picard.max_iter},
                   {"nodes_per_window", c.picard.nodes},
                   {"interpolation", interpolation_name(c.picard.interpolation)}};

    json jm;
    jm["atoms"] = json::array();
    for (const auto& a : c.measure.atoms)
        jm["atoms"].push_back({a.r, a.z, a.mass});
    jm["eps"] = c.measure.eps;
    jm["eps_list"] = c.measure.eps_list;
    jm["alpha_list"] = c.measure.alpha_list;
    jm["probes"] = json::array();
    for (const auto& p : c.measure.probes)
        jm["probes"].push_back({p.x, p.y, p.z});
    jm["probe_distance"] = c.measure.probe_distance;
    j["measure"] = jm;

    const auto& d = c.diagnostics;
    j["diagnostics"] = {{"verify", d.verify},
                        {"energy", d.energy},
                        {"energy_nr", d.energy_nr},
                        {"energy_nz", d.energy_nz},
                        {"energy_margin", d.energy_margin},
                        {"probe_count", d.probe_count},
                        {"swirl_tolerance", d.swirl_tolerance}};
    j["output"] = {{"directory", c.output.directory},
                   {"format", c.output.format == OutputFormat::csv ? "csv" : "jsonl"}};
    j["seed"] = c.seed;
    return j.dump(2) + "\n";
}

//---------------------------------------------------------------------------//
MeasureData build_measure(const SimulationConfig& c)
{
    return MeasureData(c.measure.atoms, c.grid.box);
}

ParticleCloud build_initial_cloud(const SimulationConfig& c)
{
    const Alpha alpha(c.alpha);
    switch (c.initial.kind)
    {
    case InitialKind::profile:
        return init_from_profile(make_profile(c.initial.profile, c.initial.params),
                                 c.grid, alpha);
    case InitialKind::rings:
    {
        std::vector<VortexRing> rings;
        for (const auto& r : c.initial.rings)
            rings.push_back({r.r, r.z, r.g, r.vol, c.grid.n_theta});
        return ParticleCloud(std::move(rings), alpha);
    }
    case InitialKind::measure:
        break;
    }
    return mollify(build_measure(c), c.measure.eps, c.grid, alpha);
}

std::vector<Vec3> sweep_probes(const SimulationConfig& c)
{
    if (!c.measure.probes.empty())
        return c.measure.probes;
    // Eight meridional directions around each atom, off the axis, at a
    // fixed azimuth that avoids every node angle.
    std::vector<Vec3> out;
    const double d = c.measure.probe_distance;
    const double th = std::numbers::pi / (2 * c.grid.n_theta);
    for (const auto& a : c.measure.atoms)
        for (int k = 0; k < 8; ++k)
        {
            const double ang = k * std::numbers::pi / 4;
            const double r = a.r + d * std::cos(ang);
            const double z = a.z + d * std::sin(ang);
            if (r > 1e-9)
                out.push_back({r * std::cos(th), r * std::sin(th), z});
        }
    return out;
}

} // namespace alpharing
