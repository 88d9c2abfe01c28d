#pragma once

/// @file io.hpp
/// @brief Bit-stable text artifacts: diagnostics CSV, snapshot files, the run
///        manifest, and the content hash that ties them together.
///
/// All numbers are written with 17 significant digits so binary64 values
/// round-trip losslessly; identical configs therefore produce byte-identical
/// files.

#include <string>
#include <vector>

#include "radns/config.hpp"
#include "radns/diagnostics.hpp"
#include "radns/grid.hpp"

namespace radns {

std::string format17(double v);

/// One diagnostics row: the sample plus the step quantities that belong to it.
struct SampleRow {
    DiagnosticsSample diag;
    double dt = 0.0;
    double boundary_contamination = 0.0;
};

/// Fixed column order:
/// t, dt, min_rho, max_rho, kinetic, potential, bd_kinetic,
/// bd_dissipation_rate, energy_residual, bd_residual, k_moment_<k>...,
/// wnorm_<tag>..., boundary_contamination
std::string diagnostics_csv(const std::vector<SampleRow>& rows, const DiagnosticsConfig& cfg);

/// Header (format version and run metadata) followed by rows [r, rho, u, w].
std::string snapshot_text(const FluidState& state, const RadialGrid& grid,
                          const ModelParams& params);

struct SnapshotData {
    ModelParams params;
    Regime regime = Regime::cauchy;
    int n_cells = 0;
    double r_max = 0.0;
    double time = 0.0;
    Field r, rho, u, w;
};

SnapshotData parse_snapshot(const std::string& text);

/// Git-style content hash: SHA-1 over "blob <len>\0<bytes>", lowercase hex.
std::string git_blob_sha1(const std::string& bytes);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace radns
