// Copyright 2026 The alpharing Authors
// SPDX-License-Identifier: Apache-2.0
//! \file snapshot.hpp
//! Snapshot and diagnostics records on disk. Numbers are written with 17
//! significant digits so a write/read round trip is bit-exact.
#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "config.hpp"
#include "diagnostics.hpp"
#include "state.hpp"

namespace alpharing
{
//! Shortest-exact decimal text of a double (%.17g).
std::string format_double(double v);

class SnapshotError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! Header line of the CSV snapshot format.
inline constexpr const char* kSnapshotHeader = "t,j,r,z,g,vol";

//! File name of the snapshot stream inside a run directory.
std::string snapshot_file_name(OutputFormat format);

//! Format implied by a path's extension (.csv or .jsonl).
OutputFormat format_for_path(const std::string& path);

//! Append one record per ring to `out`.
void write_snapshot(std::ostream& out, const ParticleCloud& cloud, OutputFormat format);

//! Opens `path` for writing; writes the CSV header immediately.
class SnapshotWriter
{
  public:
    SnapshotWriter(const std::string& path, OutputFormat format);
    void write(const ParticleCloud& cloud);

  private:
    std::string path_;
    OutputFormat format_;
    std::ofstream out_;
};

/*!
 * Read every snapshot in a stream file. Records are grouped by t in file
 * order; ring indices must run 0, 1, ... within each group. A file with
 * no records yields a single empty cloud at t = 0.
 */
std::vector<ParticleCloud>
read_snapshots(const std::string& path, Alpha alpha, int n_theta);

//! One diagnostics.jsonl record.
struct DiagnosticsRecord
{
    double t = 0;
    std::size_t rings = 0;
    double l1 = 0;
    double l2 = 0;
    double linf = 0;
    std::optional<double> energy;
};

DiagnosticsRecord make_diagnostics_record(const ParticleCloud& cloud,
                                          const DiagnosticsConfig& config);

void write_diagnostics_record(std::ostream& out, const DiagnosticsRecord& record);

//! Machine-readable verify report: {"pass": ..., "properties": [...]}.
std::string verify_report_json(std::span<const PropertyResult> results);

} // namespace alpharing
