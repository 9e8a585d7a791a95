// Copyright 2026 The alpharing Authors
// SPDX-License-Identifier: Apache-2.0
#include "alpharing/snapshot.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include <json.hpp>

namespace alpharing
{
std::string format_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string snapshot_file_name(OutputFormat format)
{
    return format == OutputFormat::csv ? "snapshots.csv" : "snapshots.jsonl";
}

OutputFormat format_for_path(const std::string& path)
{
    auto ends_with = [&](const char* ext) {
        const std::size_t n = std::strlen(ext);
        return path.size() >= n && path.compare(path.size() - n, n, ext) == 0;
    };
    if (ends_with(".csv"))
        return OutputFormat::csv;
    if (ends_with(".jsonl"))
        return OutputFormat::jsonl;
    throw SnapshotError("snapshot '" + path + "': expected a .csv or .jsonl file");
}

void write_snapshot(std::ostream& out, const ParticleCloud& cloud, OutputFormat format)
{
    const std::string t = format_double(cloud.time());
    const auto& rings = cloud.rings();
    for (std::size_t j = 0; j < rings.size(); ++j)
    {
        const auto& r = rings[j];
        if (format == OutputFormat::csv)
            out << t << ',' << j << ',' << format_double(r.r) << ','
                << format_double(r.z) << ',' << format_double(r.g) << ','
                << format_double(r.vol) << '\n';
        else
            out << "{\"t\":" << t << ",\"j\":" << j << ",\"r\":" << format_double(r.r)
                << ",\"z\":" << format_double(r.z) << ",\"g\":" << format_double(r.g)
                << ",\"vol\":" << format_double(r.vol) << "}\n";
    }
}

SnapshotWriter::SnapshotWriter(const std::string& path, OutputFormat format)
    : path_(path), format_(format), out_(path, std::ios::binary | std::ios::trunc)
{
    if (!out_)
        throw SnapshotError("cannot open '" + path + "' for writing");
    if (format_ == OutputFormat::csv)
        out_ << kSnapshotHeader << '\n';
}

void SnapshotWriter::write(const ParticleCloud& cloud)
{
    write_snapshot(out_, cloud, format_);
    out_.flush();
    if (!out_)
        throw SnapshotError("write failed on '" + path_ + "'");
}

//---------------------------------------------------------------------------//
namespace
{
struct Row
{
    double t, r, z, g, vol;
    long j;
};

double parse_number(const std::string& s, const std::string& where)
{
    if (s.empty())
        throw SnapshotError(where + ": empty field");
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || (errno == ERANGE && std::isinf(v)))
        throw SnapshotError(where + ": bad number '" + s + "'");
    return v;
}

Row parse_csv_row(const std::string& line, const std::string& where)
{
    std::vector<std::string> f;
    std::size_t start = 0;
    while (true)
    {
        const std::size_t comma = line.find(',', start);
        f.push_back(line.substr(start, comma - start));
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    if (f.size() != 6)
        throw SnapshotError(where + ": expected 6 fields, found "
                            + std::to_string(f.size()));
    const double j = parse_number(f[1], where);
    if (j < 0 || j != std::floor(j))
        throw SnapshotError(where + ": ring index must be a non-negative integer");
    return {parse_number(f[0], where), parse_number(f[2], where),
            parse_number(f[3], where), parse_number(f[4], where),
            parse_number(f[5], where), long(j)};
}

Row parse_jsonl_row(const std::string& line, const std::string& where)
{
    nlohmann::json j;
    try
    {
        j = nlohmann::json::parse(line);
    }
    catch (const nlohmann::json::parse_error&)
    {
        throw SnapshotError(where + ": malformed JSON record");
    }
    for (const char* key : {"t", "j", "r", "z", "g", "vol"})
        if (!j.contains(key) || !j[key].is_number())
            throw SnapshotError(where + ": missing numeric field '" + key + "'");
    if (!j["j"].is_number_unsigned())
        throw SnapshotError(where + ": ring index must be a non-negative integer");
    return {j["t"].get<double>(), j["r"].get<double>(), j["z"].get<double>(),
            j["g"].get<double>(), j["vol"].get<double>(), j["j"].get<long>()};
}
} // namespace

std::vector<ParticleCloud>
read_snapshots(const std::string& path, Alpha alpha, int n_theta)
{
    const OutputFormat format = format_for_path(path);
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw SnapshotError("cannot open snapshot '" + path + "'");

    std::vector<ParticleCloud> out;
    std::vector<VortexRing> rings;
    double t = 0;
    bool open = false;
    auto flush = [&] {
        if (!open)
            return;
        try
        {
            out.emplace_back(std::move(rings), alpha, t);
        }
        catch (const std::exception& e)
        {
            throw SnapshotError("snapshot '" + path + "' at t = " + format_double(t)
                                + ": " + e.what());
        }
        rings.clear();
        open = false;
    };

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        const std::string where = path + ":" + std::to_string(lineno);
        if (format == OutputFormat::csv && lineno == 1)
        {
            if (line != kSnapshotHeader)
                throw SnapshotError(where + ": expected header '" + kSnapshotHeader
                                    + "'");
            continue;
        }
        if (line.empty())
            continue;
        const Row row = format == OutputFormat::csv ? parse_csv_row(line, where)
                                                    : parse_jsonl_row(line, where);
        if (!open || row.t != t)
        {
            flush();
            t = row.t;
            open = true;
        }
        if (row.j != long(rings.size()))
            throw SnapshotError(where + ": ring index " + std::to_string(row.j)
                                + " out of sequence");
        rings.push_back({row.r, row.z, row.g, row.vol, n_theta});
    }
    if (format == OutputFormat::csv && lineno == 0)
        throw SnapshotError(path + ": missing header");
    flush();
    if (out.empty())
        out.emplace_back(std::vector<VortexRing>{}, alpha, 0.0);
    return out;
}

//---------------------------------------------------------------------------//
DiagnosticsRecord make_diagnostics_record(const ParticleCloud& cloud,
                                          const DiagnosticsConfig& config)
{
    DiagnosticsRecord rec;
    rec.t = cloud.time();
    rec.rings = cloud.size();
    if (!cloud.empty())
    {
        rec.l1 = lp_norm(cloud, 1);
        rec.l2 = lp_norm(cloud, 2);
        rec.linf = lp_norm(cloud, INFINITY);
    }
    if (config.energy)
    {
        double r_max = 0, z_min = INFINITY, z_max = -INFINITY;
        for (const auto& ring : cloud.rings())
        {
            r_max = std::max(r_max, ring.r);
            z_min = std::min(z_min, ring.z);
            z_max = std::max(z_max, ring.z);
        }
        const double m = 5 * cloud.alpha().value() + config.energy_margin;
        EnergyGrid grid;
        grid.box = cloud.empty() ? Box{} : Box{0, r_max + m, z_min - m, z_max + m};
        grid.nr = config.energy_nr;
        grid.nz = config.energy_nz;
        rec.energy = energy_monitor(cloud, grid);
    }
    return rec;
}

void write_diagnostics_record(std::ostream& out, const DiagnosticsRecord& rec)
{
    out << "{\"t\":" << format_double(rec.t) << ",\"rings\":" << rec.rings
        << ",\"l1\":" << format_double(rec.l1) << ",\"l2\":" << format_double(rec.l2)
        << ",\"linf\":" << format_double(rec.linf);
    if (rec.energy)
        out << ",\"energy\":" << format_double(*rec.energy);
    out << "}\n";
}

std::string verify_report_json(std::span<const PropertyResult> results)
{
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["pass"] = all_pass(results);
    j["properties"] = nlohmann::json::array();
    for (const auto& r : results)
    {
        nlohmann::json p;
        p["property"] = r.property;
        p["value"] = r.value;
        p["bound"] = r.bound ? nlohmann::json(*r.bound) : nlohmann::json(nullptr);
        p["pass"] = r.pass;
        if (!r.detail.empty())
            p["detail"] = r.detail;
        j["properties"].push_back(p);
    }
    return j.dump(2) + "\n";
}

} // namespace alpharing
