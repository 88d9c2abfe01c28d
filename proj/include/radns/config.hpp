#pragma once

/// @file config.hpp
/// @brief Full experiment description and its flat `key = value` text format.
///
/// The format is sectioned, human-writable, and diffable:
///
///   [model]
///   dim = 3
///   alpha = 0.7
///   ...
///
/// parse -> serialize -> parse is the identity on the parsed struct.

#include <optional>
#include <string>
#include <vector>

#include "radns/diagnostics.hpp"
#include "radns/grid.hpp"
#include "radns/params.hpp"
#include "radns/solver.hpp"

namespace radns {

enum class AdmissibilityPolicy { warn, enforce };

struct RunConfig {
    ModelParams model;
    Regime regime = Regime::cauchy;
    int n_cells = 256;
    double r_max = 8.0;
    SchemeConfig scheme;
    InitialDataSpec initial;
    double t_end = 1.0;
    double snapshot_every = 0.0;  ///< 0 means only t = 0 and t_end
    std::optional<double> fixed_dt;
    AdmissibilityPolicy policy = AdmissibilityPolicy::warn;
    DiagnosticsConfig diagnostics;
    std::optional<double> eta;  ///< weight for the weighted 2d data class
    std::string output_dir = "out";
};

/// Parse the sectioned text.  Unknown keys, malformed values, and invariant
/// violations (eta outside [1/3,1], missing far_density, ...) are usage
/// errors reported as std::invalid_argument with line context.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Canonical text form; every field explicit.
std::string serialize_config(const RunConfig& cfg);

/// Theorem regime implied by (dim, regime, eta); throws for combinations the
/// theorems do not cover (a 2d ball).
TheoremRegime theorem_regime(const RunConfig& cfg);

/// Admissibility of the configured parameters in the implied regime.
AdmissibilityReport check_config_admissibility(const RunConfig& cfg);

bool operator==(const RunConfig& a, const RunConfig& b);

}  // namespace radns
