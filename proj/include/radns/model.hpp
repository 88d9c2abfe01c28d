#pragma once

/// @file model.hpp
/// @brief Constitutive laws and pointwise/fieldwise formulas of the radial
///        system: pressure, power-law viscosities, relative potential energy,
///        effective velocity, and the PDE residual operators.
///
/// The radial system on (0, r_max) reads
///   rho_t + (rho u)_r + (N-1) rho u / r = 0
///   rho (u_t + u u_r) + (a rho^gamma)_r
///     - alpha ( r^{-(N-1)} rho^alpha (r^{N-1} u)_r )_r
///     + (N-1) (rho^alpha)_r u / r = 0
/// with mu = rho^alpha, lambda = (alpha-1) rho^alpha (so the BD relation
/// lambda = mu' rho - mu holds identically).
///
/// Derivative stencils are second-order centered in the interior, one-sided
/// second-order at the outer end, and parity-based across r = 0 (density-like
/// fields are even, velocity-like fields odd).

#include "radns/grid.hpp"
#include "radns/params.hpp"
#include "radns/types.hpp"

namespace radns {

enum class Parity { even, odd };

/// d/dr of a cell-centered field.
Field radial_derivative(const Field& f, const RadialGrid& grid, Parity parity);

struct ConstitutiveSet {
    ModelParams params;

    explicit ConstitutiveSet(ModelParams p);

    double pressure(double rho) const;           ///< a rho^gamma
    Field pressure(const Field& rho) const;
    double shear_viscosity(double rho) const;    ///< rho^alpha
    double bulk_viscosity(double rho) const;     ///< (alpha-1) rho^alpha

    /// Relative potential energy density
    ///   K(rho) = a [ (rho^gamma - gamma rho rho_far^{gamma-1})/(gamma-1) + rho_far^gamma ],
    /// the closed form of rho * int_{rho_far}^{rho} (P(s)-P(rho_far))/s^2 ds.
    /// K(rho_far) = 0, K >= 0, convex.
    double potential_energy(double rho) const;
    Field potential_energy(const Field& rho) const;
};

/// w = u + rho^{-1} (rho^alpha)_r = u + alpha rho^{alpha-2} rho_r, with rho_r
/// from the grid stencil.  Exactly u on constant density.
Field effective_velocity(const FluidState& state, const RadialGrid& grid,
                         const ModelParams& params);

/// Residual of the continuity equation for a candidate time derivative:
/// d_rho_dt + (rho u)_r + (N-1) rho u / r.
Field mass_residual(const FluidState& state, const Field& d_rho_dt,
                    const RadialGrid& grid);

/// Residual of the momentum equation for a candidate time derivative:
/// rho (d_u_dt + u u_r) + (a rho^gamma)_r - alpha (r^{-(N-1)} rho^alpha
/// (r^{N-1} u)_r)_r + (N-1) (rho^alpha)_r u / r.
Field momentum_residual(const FluidState& state, const Field& d_u_dt,
                        const RadialGrid& grid, const ModelParams& params);

enum class EffectiveVelocityForm {
    transport,  ///< rho w_t + rho u w_r + (a rho^gamma)_r = 0
    damping     ///< rho w_t + rho u w_r + (a gamma/alpha) rho^{gamma+1-alpha} (w-u) = 0
};

/// Residual of the selected effective-velocity equation.  The two forms agree
/// identically when w - u = rho^{-1}(rho^alpha)_r, hence to stencil order on
/// discrete states.
Field effective_velocity_residual(const FluidState& state, const Field& w,
                                  const Field& d_w_dt, const RadialGrid& grid,
                                  const ModelParams& params,
                                  EffectiveVelocityForm form);

/// The grouped viscous flux rho^alpha * r^{-(N-1)} (r^{N-1} u)_r evaluated on
/// the n_cells+1 faces.  Face 0 uses the symmetry closure
/// N rho^alpha u/r -> N rho_0^alpha u_0 / r_0; the outer face is extrapolated
/// (callers that know boundary data overwrite it).
Field grouped_viscous_flux_on_faces(const Field& rho, const Field& u,
                                    const RadialGrid& grid, double alpha);

}  // namespace radns
