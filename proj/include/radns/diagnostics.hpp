#pragma once

/// @file diagnostics.hpp
/// @brief Discrete evaluation of the monitored functionals: energy, BD
///        entropy, momentum k-moments, weighted norms, density extrema, and
///        the balance residuals of the two dissipation identities.
///
/// The energy identity in dimension N reads
///   d/dt int (1/2 rho u^2 + K) r^{N-1} dr + D = P,
///   D = alpha int rho^a u_r^2 r^{N-1} dr
///       + (N-1)(alpha(N-1)-(N-2)) int rho^a u^2 r^{N-3} dr,
///   P = 2 (N-1)(1-alpha) int rho^a u u_r r^{N-2} dr,
/// and the BD entropy identity
///   d/dt int (1/2 rho w^2 + K) r^{N-1} dr
///     = -(a gamma/alpha) int rho^{gamma-alpha-1} |(rho^alpha)_r|^2 r^{N-1} dr.
/// Residuals compare the discrete time difference of the left side against
/// the right side evaluated at the midpoint state; they are reported raw.

#include <string>
#include <utility>
#include <vector>

#include "radns/grid.hpp"
#include "radns/model.hpp"
#include "radns/params.hpp"
#include "radns/solver.hpp"

namespace radns {

enum class NormField { rho, rho_minus_far, u, w, grad_rho };

struct WeightedNormSpec {
    std::string tag;
    NormField field = NormField::rho_minus_far;
    double p = 2.0;  // may be infinity
    double xi = 0.0;
    double lo = 0.0;
    double hi = -1.0;  // <= lo means full domain
};

struct DiagnosticsConfig {
    std::vector<double> k_moments;
    std::vector<WeightedNormSpec> weighted_norms;
};

struct DiagnosticsSample {
    double time = 0.0;
    double kinetic_energy = 0.0;
    double potential_energy_total = 0.0;
    double bd_kinetic = 0.0;
    double bd_dissipation_rate = 0.0;
    double energy_balance_residual = 0.0;
    double bd_balance_residual = 0.0;
    double bd_discrete_rate = 0.0;  ///< signed d/dt of the BD functional
    std::vector<std::pair<double, double>> k_moments;
    std::vector<std::pair<std::string, double>> weighted_norms;
    double min_rho = 0.0;
    double max_rho = 0.0;
    double grad_entropy_norm = 0.0;
};

/// int f r^m dr with midpoint sampling; exact per-cell monomial weights for
/// m >= 0, plain midpoint rule otherwise (the integrand f r^m must be finite).
double integrate_rpow(const Field& f, const RadialGrid& grid, double m);

/// (kinetic, potential) = (int 1/2 rho u^2, int K(rho)) against r^{N-1} dr.
std::pair<double, double> total_energy(const FluidState& state, const RadialGrid& grid,
                                       const ModelParams& params);

/// D and P of the energy identity at one state.
struct EnergyRateTerms {
    double dissipation = 0.0;
    double production = 0.0;
};

EnergyRateTerms energy_rate_terms(const FluidState& state, const RadialGrid& grid,
                                  const ModelParams& params);

/// |Delta E / Delta t + D - P| with D, P at the midpoint state.
double energy_balance_residual(const FluidState& before, const FluidState& after,
                               const RadialGrid& grid, const ModelParams& params);

struct BdBalance {
    double residual = 0.0;       ///< |Delta BD / Delta t + dissipation rate|
    double discrete_rate = 0.0;  ///< signed Delta BD / Delta t
    double dissipation_rate = 0.0;
};

BdBalance bd_entropy_balance(const FluidState& before, const FluidState& after,
                             const RadialGrid& grid, const ModelParams& params);

/// int rho |u|^k r^{N-1} dr, k >= 2.
double k_moment(const FluidState& state, const RadialGrid& grid, double k);

/// int |(rho^{alpha-1/2})_r|^2 r^{N-1+xi} dr.
double entropy_gradient_norm(const FluidState& state, const RadialGrid& grid,
                             const ModelParams& params, double weight_exponent = 0.0);

std::pair<double, double> density_extrema(const FluidState& state);

/// Full sample over one accepted step (state_prev -> state).  Pass the same
/// state twice for an initial sample; the balance residuals are then zero.
DiagnosticsSample sample_all(const FluidState& state_prev, const FluidState& state,
                             const RadialGrid& grid, const ModelParams& params,
                             const DiagnosticsConfig& config);

}  // namespace radns
