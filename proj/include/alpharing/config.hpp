// Copyright 2026 The alpharing Authors
// SPDX-License-Identifier: Apache-2.0
//! \file config.hpp
//! Simulation configuration: JSON text form, validation and round trip.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "diagnostics.hpp"
#include "evolve.hpp"
#include "profiles.hpp"
#include "state.hpp"

namespace alpharing
{
inline constexpr int kSchemaVersion = 1;

class ConfigError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

enum class InitialKind
{
    profile,
    rings,
    measure,
};

struct RingSpec
{
    double r = 0;
    double z = 0;
    double g = 0;
    double vol = 0;

    friend bool operator==(const RingSpec&, const RingSpec&) = default;
};

struct InitialConfig
{
    InitialKind kind = InitialKind::profile;
    std::string profile = "gaussian_ring"; //!< kind == profile
    ProfileParams params;                  //!< kind == profile
    std::vector<RingSpec> rings;           //!< kind == rings

    friend bool operator==(const InitialConfig&, const InitialConfig&) = default;
};

struct MeasureConfig
{
    std::vector<MeasureAtom> atoms;
    double eps = 0.1;               //!< simulate with kind == measure
    std::vector<double> eps_list;   //!< sweep; strictly decreasing
    std::vector<double> alpha_list; //!< sweep; empty means {alpha}
    //! Explicit sweep probes; when empty, probes are placed around each
    //! atom at meridional distance probe_distance.
    std::vector<Vec3> probes;
    double probe_distance = 1.0;

    friend bool operator==(const MeasureConfig&, const MeasureConfig&) = default;
};

struct DiagnosticsConfig
{
    bool verify = true;
    bool energy = false;
    int energy_nr = 64;
    int energy_nz = 64;
    double energy_margin = 1.0; //!< added to the 5 alpha margin
    int probe_count = 64;
    double swirl_tolerance = 1e-8;

    friend bool operator==(const DiagnosticsConfig&, const DiagnosticsConfig&) = default;
};

enum class OutputFormat
{
    csv,
    jsonl,
};

struct OutputConfig
{
    std::string directory = "run";
    OutputFormat format = OutputFormat::csv;

    friend bool operator==(const OutputConfig&, const OutputConfig&) = default;
};

struct SimulationConfig
{
    int schema_version = kSchemaVersion;
    double alpha = 0.1;
    InitialConfig initial;
    GridSpec grid;
    EvolverKind evolver = EvolverKind::rk4;
    double dt = 0.01;
    double T = 0.1;
    int snapshot_every = 1;
    PicardOptions picard;
    MeasureConfig measure;
    DiagnosticsConfig diagnostics;
    OutputConfig output;
    std::uint64_t seed = 1;

    AdvanceControls controls() const;
    VerifyOptions verify_options() const;
};

bool operator==(const SimulationConfig& a, const SimulationConfig& b);

/*!
 * Parse and validate a JSON config. Missing keys take their defaults.
 * Unknown keys are rejected with their dotted path; constraint
 * violations name the constraint.
 */
SimulationConfig parse_config(const std::string& text);
SimulationConfig load_config(const std::string& path);

//! Full JSON text of the config, every key present.
std::string serialize_config(const SimulationConfig& config);

//! Throws ConfigError on the first violated constraint.
void validate(const SimulationConfig& config);

//! Initial cloud described by the config.
ParticleCloud build_initial_cloud(const SimulationConfig& config);

//! Measure data of the config, supported in the grid box.
MeasureData build_measure(const SimulationConfig& config);

//! Explicit probes or the default ring of probes around each atom.
std::vector<Vec3> sweep_probes(const SimulationConfig& config);

} // namespace alpharing
