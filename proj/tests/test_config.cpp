// Copyright 2026 The alpharing Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <filesystem>
#include <string>

#include "alpharing/config.hpp"
#include "helpers.hpp"

using namespace alpharing;

namespace
{
std::string error_of(const std::string& text)
{
    try
    {
        (void)parse_config(text);
    }
    catch (const ConfigError& e)
    {
        return e.what();
    }
    return {};
}

bool contains(const std::string& s, const std::string& part)
{
    return s.find(part) != std::string::npos;
}
} // namespace

TEST_SUITE("config")
{
    TEST_CASE("empty object gives defaults")
    {
        const auto c = parse_config("{}");
        CHECK(c == SimulationConfig{});
        CHECK(c.alpha == 0.1);
        CHECK(c.evolver == EvolverKind::rk4);
        CHECK(c.picard.interpolation == TimeInterpolation::cubic_hermite);
    }

    TEST_CASE("invalid values name the offending field")
    {
        CHECK(contains(error_of(R"({"alpha": 0})"), "alpha: α > 0 required"));
        CHECK(contains(error_of(R"({"alpha": -1})"), "α > 0 required"));
        CHECK(contains(error_of(R"({"grid": {"n_theta": 5}})"), "grid.n_theta"));
        CHECK(contains(error_of(R"({"grid": {"nr": 1.5}})"), "grid.nr must be an integer"));
        CHECK(contains(error_of(R"({"grid": {"box": [0, 1, 2]}})"), "grid.box"));
        CHECK(contains(error_of(R"({"dt": 0})"), "dt"));
        CHECK(contains(error_of(R"({"evolver": "euler"})"), "evolver"));
        CHECK(contains(error_of(R"({"picard": {"tolerance": 1}})"), "unknown key 'picard.tolerance'"));
        CHECK(contains(error_of(R"({"alhpa": 1})"), "unknown key 'alhpa'"));
        CHECK(contains(error_of(R"({"measure": {"eps_list": [0.1, 0.2]}})"), "strictly decreasing"));
        CHECK(contains(error_of(R"({"initial": {"name": "square"}})"), "initial"));
        CHECK(contains(error_of(R"({"output": {"format": "xml"}})"), "output.format"));
        CHECK(contains(error_of("{"), "malformed JSON"));
        CHECK(contains(error_of(R"({"schema_version": 2})"), "schema_version"));
    }

    TEST_CASE("round trip")
    {
        SimulationConfig c;
        c.alpha = 0.25;
        c.evolver = EvolverKind::picard;
        c.picard.interpolation = TimeInterpolation::linear;
        c.picard.nodes = 12;
        c.initial.kind = InitialKind::rings;
        c.initial.rings = {{1, 0, 2, 0.1}, {0.5, 0.3, -1, 0.2}};
        c.grid.box = {0.2, 1.4, -0.5, 0.7};
        c.measure.atoms = {{1, 0, 1}};
        c.measure.eps_list = {0.2, 0.1};
        c.measure.probes = {{1, 2, 3}};
        c.diagnostics.energy = true;
        c.output.format = OutputFormat::jsonl;
        c.seed = 42;
        const auto text = serialize_config(c);
        const auto back = parse_config(text);
        CHECK(back == c);
        CHECK(serialize_config(back) == text);
    }

    TEST_CASE("bundled configs load")
    {
        for (const auto& entry :
             std::filesystem::directory_iterator(test::source_dir() / "configs"))
        {
            CAPTURE(entry.path().string());
            const auto c = load_config(entry.path().string());
            CHECK_NOTHROW((void)build_initial_cloud(c));
        }
        CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
    }

    TEST_CASE("initial rings and measure data")
    {
        const auto c = parse_config(R"({
            "initial": {"type": "rings", "rings": [{"r": 1, "z": 0, "g": 2, "vol": 0.5}]},
            "grid": {"n_theta": 8}})");
        const auto cloud = build_initial_cloud(c);
        REQUIRE(cloud.size() == 1);
        CHECK(cloud.rings()[0].weight() == 1);
        CHECK(cloud.rings()[0].n_theta == 8);

        const auto m = parse_config(R"({
            "grid": {"box": [0.5, 1.5, -0.5, 0.5]},
            "measure": {"atoms": [[1, 0, 1], [1.2, 0.1, -0.5]], "probe_distance": 1}})");
        const auto data = build_measure(m);
        CHECK(data.total_variation() == 1.5);
        const auto probes = sweep_probes(m);
        // One direction lands on the axis and is dropped.
        CHECK(probes.size() == 15);
        CHECK(contains(error_of(R"({"grid": {"box": [0.5, 1.5, -0.5, 0.5]},
                                    "initial": {"type": "measure"},
                                    "measure": {"atoms": [[3, 0, 1]]}})"),
                       "outside grid.box"));
    }
}
