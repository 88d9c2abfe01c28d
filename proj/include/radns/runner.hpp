#pragma once

/// @file runner.hpp
/// @brief Drives a configured run to t_end (or rejection), collecting
///        snapshots and diagnostics at the configured cadence, and writes the
///        on-disk artifacts (CSV, snapshots, manifest).

#include <optional>
#include <string>
#include <vector>

#include "radns/config.hpp"
#include "radns/io.hpp"
#include "radns/solver.hpp"

namespace radns {

enum class RunStatus { completed, rejected };

struct RunResult {
    RunStatus status = RunStatus::completed;
    long steps = 0;
    long rejected_steps = 0;
    std::optional<long> failing_step;
    double global_min_rho = 0.0;
    double global_max_rho = 0.0;
    double outer_mass_outflow = 0.0;  ///< time-integrated mass through the outer face
    std::vector<SampleRow> samples;
    std::vector<FluidState> snapshots;
    std::optional<AdmissibilityReport> admissibility;
    std::vector<std::string> warnings;
};

/// Integrates the configured problem.  Policy `enforce` turns a
/// non-admissible parameter tuple into a usage error; `warn` records it.
RunResult run(const RunConfig& cfg);

/// Writes diagnostics.csv, snapshot_NNNNNN.txt, and manifest.json under
/// output_dir; returns the manifest path.  Identical (config, result) pairs
/// produce byte-identical files.
std::string write_run_artifacts(const RunConfig& cfg, const RunResult& result,
                                const std::string& output_dir);

}  // namespace radns
