#pragma once

/// @file verification.hpp
/// @brief Independent oracles: adaptive quadrature, a manufactured-solution
///        family with hand-derived sources, and grid-convergence studies.

#include <functional>
#include <vector>

#include "radns/grid.hpp"
#include "radns/params.hpp"
#include "radns/solver.hpp"

namespace radns {

/// Adaptive Simpson quadrature of a smooth function.  Throws
/// std::runtime_error (message carries the partial estimate) when the
/// subdivision budget is exhausted before reaching the tolerance.
double adaptive_quadrature(const std::function<double(double)>& f, double lo, double hi,
                           double tol);

/// Built-in manufactured family
///   rho*(r,t) = rho_far + A e^{-t} e^{-r^2}
///   u*(r,t)   = B t r e^{-r^2}
/// positive and smooth for |A| <= rho_far / 2, with u*(0,t) = 0.
struct ManufacturedCase {
    ModelParams params;
    double amplitude = 0.3;           ///< A
    double velocity_amplitude = 0.5;  ///< B
    double t_max = 1.0;               ///< validity window [0, t_max]

    ManufacturedCase(ModelParams p, double A, double B, double t_end);

    double exact_rho(double r, double t) const;
    double exact_u(double r, double t) const;
    Field exact_rho(const RadialGrid& grid, double t) const;
    Field exact_u(const RadialGrid& grid, double t) const;
    FluidState exact_state(const RadialGrid& grid, double t, Regime regime) const;
};

struct MmsSources {
    Field mass;
    Field momentum;
};

/// Hand-derived residuals of the exact fields in the radial system, sampled
/// on cell centers.  Throws std::invalid_argument outside the validity window.
MmsSources mms_sources(const ManufacturedCase& c, const RadialGrid& grid, double t);

/// Max-abs difference between the hand-derived sources and sources rebuilt
/// from 6th-order finite differences of the exact fields; used as a
/// self-check that the closed forms are right.
double mms_source_stencil_error(const ManufacturedCase& c, const RadialGrid& grid, double t);

struct ConvergenceStudy {
    std::vector<int> sizes;
    std::vector<double> rho_errors;  ///< L2 errors against rho* at t_end
    std::vector<double> u_errors;
    double rho_order = 0.0;  ///< least-squares slope in log-log
    double u_order = 0.0;
    bool monotone = true;  ///< false flags unreliable orders
    bool exact = false;    ///< errors at round-off (order meaningless)
};

struct ConvergenceOptions {
    double r_max = 4.0;
    double t_end = 0.5;
    Regime regime = Regime::cauchy;
};

/// Runs the manufactured case on a sequence of grids with dt tied to dr^2 and
/// fits the observed orders.  Requires at least three sizes in ascending
/// order with refinement factor 2.
ConvergenceStudy convergence_study(const ManufacturedCase& c, const SchemeConfig& scheme,
                                   const std::vector<int>& sizes,
                                   const ConvergenceOptions& opts = {});

/// Canonical case driven by the `mms` command and the acceptance suite.
ManufacturedCase builtin_manufactured_case();

struct OrderBand {
    double lo = 0.0;
    double hi = 0.0;
};

/// Contracted observed-order band per advection scheme: [1.8, 2.2] for
/// muscl-minmod, [0.8, 1.2] for upwind1.
OrderBand contracted_order_band(Advection advection);

}  // namespace radns
