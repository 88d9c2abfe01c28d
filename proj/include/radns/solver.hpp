#pragma once

/// @file solver.hpp
/// @brief Explicit / semi-implicit time integration of the radial system.
///
/// Layout: colocated cell-centered fields.  Continuity advances in
/// conservative flux form (r^{N-1} rho u across faces, so the origin face
/// carries zero flux and discrete mass telescopes exactly); momentum advances
/// in nonconservative form with the viscous operator discretized in the exact
/// grouped form alpha (r^{-(N-1)} rho^alpha (r^{N-1} u)_r)_r.
///
/// A step never repairs a vacuum breach: if the candidate state loses
/// positivity the step is rejected and reported, the input state unchanged.

#include <functional>
#include <optional>
#include <utility>

#include "radns/grid.hpp"
#include "radns/model.hpp"
#include "radns/params.hpp"

namespace radns {

enum class Advection { upwind1, muscl_minmod };
enum class ViscousTreatment { explicit_euler, semi_implicit };
enum class TimeIntegrator { ssp_rk2, forward_euler };

struct SchemeConfig {
    Advection advection = Advection::muscl_minmod;
    ViscousTreatment viscous_treatment = ViscousTreatment::explicit_euler;
    TimeIntegrator time_integrator = TimeIntegrator::ssp_rk2;
    double cfl_number = 0.4;
    double viscous_safety = 0.4;
};

void validate(const SchemeConfig& s);

struct StepReport {
    double dt_used = 0.0;
    double advective_dt = 0.0;  ///< min dr / (|u| + c), before the CFL factor
    double viscous_dt = 0.0;    ///< min dr^2 / (2 nu), before the safety factor
    double min_rho = 0.0;
    double max_rho = 0.0;
    /// relative perturbation from the far-field state in the outermost 5% of cells
    double boundary_contamination = 0.0;
    double outer_mass_flux = 0.0;  ///< mass leaving through the outer face this step
    bool step_accepted = false;
};

/// Ghost-extended fields (two ghost cells per side).  Index j holds cell
/// j - 2; the origin ghosts mirror rho evenly and u oddly, the outer ghosts
/// follow the regime (Dirichlet (rho_far, 0) for cauchy, no-slip wall with
/// extrapolated density for ball).
struct GhostState {
    Field rho;  ///< size n_cells + 4
    Field u;
};

GhostState apply_boundary(const FluidState& state, const RadialGrid& grid,
                          const ModelParams& params);

/// (advective_dt, viscous_dt): dr/(|u|+c) and dr^2/(2 nu) minima with
/// c = sqrt(a gamma rho^{gamma-1}) and nu = (1 + |alpha-1|) rho^{alpha-1}.
std::pair<double, double> stable_dt(const FluidState& state, const RadialGrid& grid,
                                    const ModelParams& params);

/// Optional manufactured forcing; fills the continuity and momentum sources
/// (the momentum source enters the equation form, i.e. divided by rho in the
/// velocity update) at the given stage time.
using SourceFn = std::function<void(double t, Field& s_mass, Field& s_mom)>;

struct StepResult {
    FluidState state;
    StepReport report;
};

/// One time step.  A provided dt above the stability bound of the chosen
/// scheme is a usage error.  Throws on non-finite values; a vacuum breach
/// yields step_accepted = false with the input state returned unchanged.
StepResult step(const FluidState& state, const RadialGrid& grid, const ModelParams& params,
                const SchemeConfig& scheme, std::optional<double> dt = std::nullopt,
                const SourceFn* sources = nullptr);

}  // namespace radns
