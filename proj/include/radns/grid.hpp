#pragma once

/// @file grid.hpp
/// @brief Uniform cell-centered radial grid, state container, initial data,
///        and the Lagrangian mass coordinate.
///
/// Cells cover [0, r_max] with centers at (i+1/2)*dr; no node sits at r = 0.
/// Each cell carries the exact geometric weight (r_{i+1}^N - r_i^N)/N, so the
/// discrete measure reproduces integrals of r^{N-1} dr exactly.

#include <optional>
#include <string>
#include <vector>

#include "radns/params.hpp"
#include "radns/types.hpp"

namespace radns {

struct RadialGrid {
    int n_cells = 0;
    double r_max = 0.0;
    int dim = 3;
    double dr = 0.0;
    Field cell_centers;    ///< size n_cells
    Field faces;           ///< size n_cells + 1, faces[0] = 0
    Field metric_weights;  ///< exact per-cell integral of r^{N-1} dr
};

RadialGrid build_grid(int n_cells, double r_max, int dim);

struct FluidState {
    double time = 0.0;
    Field rho;
    Field u;
    Regime regime = Regime::cauchy;
};

/// Throws std::domain_error unless rho > 0 everywhere and both fields are
/// finite and sized to the grid.
void require_valid(const FluidState& s, const RadialGrid& g);

enum class InitialKind { constant, gaussian_bump, compacted_bump, custom_table };

struct InitialDataSpec {
    InitialKind kind = InitialKind::constant;
    double amplitude = 0.0;  ///< bump height on top of far_density (may be negative, > -rho_far)
    double center = 0.0;
    double width = 1.0;
    double velocity_amplitude = 0.0;  ///< u0 = B r exp(-(r/velocity_width)^2)
    double velocity_width = 1.0;
    std::string table_file;  ///< custom-table rows: r rho u
};

/// Samples the profile on cell centers.  Density bumps are symmetrized about
/// r = 0 so rho0 is exactly even; u0 vanishes at the origin like O(r).
/// Throws std::invalid_argument when positivity would be violated.  If the
/// bump has not decayed below 1e-12 of its amplitude at r_max, a warning is
/// appended to *warnings (when given).
FluidState make_initial_data(const InitialDataSpec& spec, const RadialGrid& grid,
                             const ModelParams& params, Regime regime,
                             std::vector<std::string>* warnings = nullptr);

/// Lagrangian mass coordinate y(r) = int_0^r rho s^{N-1} ds at cell centers,
/// accumulated from exact per-cell geometric integrals.
Field mass_coordinate(const FluidState& state, const RadialGrid& grid);

/// Exact per-cell integrals of r^m dr, optionally clipped to [lo, hi].
Field cell_weights_rpow(const RadialGrid& grid, double m);
Field cell_weights_rpow(const RadialGrid& grid, double m, double lo, double hi);

/// Integral of a cell-centered field against the geometric measure r^{N-1} dr.
double integrate(const Field& f, const RadialGrid& grid);

/// (int |f|^p r^{xi p} r^{N-1} dr)^{1/p} over [lo, hi]; weighted sup for
/// p = infinity.  Empty interval is a usage error.
double weighted_lp_norm(const Field& field, const RadialGrid& grid, double p,
                        double weight_exponent, double lo, double hi);
double weighted_lp_norm(const Field& field, const RadialGrid& grid, double p,
                        double weight_exponent = 0.0);

}  // namespace radns
