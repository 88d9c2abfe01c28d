#include "radns/model.hpp"

#include <cmath>
#include <stdexcept>

namespace radns {

Field radial_derivative(const Field& f, const RadialGrid& grid, Parity parity) {
    const int n = grid.n_cells;
    if (f.size() != n) throw std::invalid_argument("radial_derivative: size mismatch");
    if (n < 3) throw std::invalid_argument("radial_derivative: need at least 3 cells");
    Field d(n);
    const double inv2 = 1.0 / (2.0 * grid.dr);
    const double mirror = (parity == Parity::even) ? 1.0 : -1.0;
    d[0] = (f[1] - mirror * f[0]) * inv2;  // ghost across r = 0
    for (int i = 1; i < n - 1; ++i) d[i] = (f[i + 1] - f[i - 1]) * inv2;
    d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) * inv2;
    return d;
}

ConstitutiveSet::ConstitutiveSet(ModelParams p) : params(p) { validate(params); }

double ConstitutiveSet::pressure(double rho) const {
    if (!(rho > 0.0)) throw std::domain_error("pressure: density must be positive");
    return params.pressure_coeff * std::pow(rho, params.gamma);
}

Field ConstitutiveSet::pressure(const Field& rho) const {
    if (!(rho > 0.0).all()) throw std::domain_error("pressure: density must be positive");
    return params.pressure_coeff * rho.pow(params.gamma);
}

double ConstitutiveSet::shear_viscosity(double rho) const {
    if (!(rho > 0.0)) throw std::domain_error("viscosity: density must be positive");
    return std::pow(rho, params.alpha);
}

double ConstitutiveSet::bulk_viscosity(double rho) const {
    return (params.alpha - 1.0) * shear_viscosity(rho);
}

double ConstitutiveSet::potential_energy(double rho) const {
    if (rho < 0.0) throw std::domain_error("potential_energy: density must be nonnegative");
    const double g = params.gamma;
    const double rf = params.far_density_or_throw();
    return params.pressure_coeff *
           ((std::pow(rho, g) - g * rho * std::pow(rf, g - 1.0)) / (g - 1.0) +
            std::pow(rf, g));
}

Field ConstitutiveSet::potential_energy(const Field& rho) const {
    if ((rho < 0.0).any()) throw std::domain_error("potential_energy: density must be nonnegative");
    const double g = params.gamma;
    const double rf = params.far_density_or_throw();
    return params.pressure_coeff *
           ((rho.pow(g) - g * std::pow(rf, g - 1.0) * rho) / (g - 1.0) + std::pow(rf, g));
}

Field effective_velocity(const FluidState& state, const RadialGrid& grid,
                         const ModelParams& params) {
    require_valid(state, grid);
    const Field drho = radial_derivative(state.rho, grid, Parity::even);
    return state.u + params.alpha * state.rho.pow(params.alpha - 2.0) * drho;
}

Field mass_residual(const FluidState& state, const Field& d_rho_dt, const RadialGrid& grid) {
    if (d_rho_dt.size() != grid.n_cells)
        throw std::invalid_argument("mass_residual: size mismatch");
    const Field flux = state.rho * state.u;
    return d_rho_dt + radial_derivative(flux, grid, Parity::odd) +
           (grid.dim - 1) * flux / grid.cell_centers;
}

Field grouped_viscous_flux_on_faces(const Field& rho, const Field& u,
                                    const RadialGrid& grid, double alpha) {
    const int n = grid.n_cells;
    const int N = grid.dim;
    Field H(n + 1);
    const Field mu = rho.pow(alpha);

    // The face value of r^{-(N-1)} (r^{N-1} u)_r is evaluated through the
    // identity u_r + (N-1) u/r, which stays second order down to the axis
    // (the literal quotient of differences loses consistency like dr^2/r^2).
    // u/r is averaged per side so the error expansion is smooth across r = 0,
    // where the odd reflection of u turns the formula into the limit N u'(0).
    const Field& r = grid.cell_centers;
    H[0] = N * mu[0] * u[0] / r[0];
    for (int f = 1; f < n; ++f) {
        const double mu_f = 0.5 * (mu[f - 1] + mu[f]);
        const double u_r = (u[f] - u[f - 1]) / grid.dr;
        const double u_over_r = 0.5 * (u[f - 1] / r[f - 1] + u[f] / r[f]);
        H[f] = mu_f * (u_r + (N - 1) * u_over_r);
    }
    // quadratic extrapolation; the centered divergence at the last cell then
    // reduces to the one-sided second-order formula
    H[n] = 3.0 * H[n - 1] - 3.0 * H[n - 2] + H[n - 3];
    return H;
}

Field momentum_residual(const FluidState& state, const Field& d_u_dt,
                        const RadialGrid& grid, const ModelParams& params) {
    require_valid(state, grid);
    if (d_u_dt.size() != grid.n_cells)
        throw std::invalid_argument("momentum_residual: size mismatch");
    const int n = grid.n_cells;
    const double a = params.pressure_coeff;

    const Field u_r = radial_derivative(state.u, grid, Parity::odd);
    const Field P_r = a * radial_derivative(state.rho.pow(params.gamma), grid, Parity::even);
    const Field H = grouped_viscous_flux_on_faces(state.rho, state.u, grid, params.alpha);
    const Field visc = (H.tail(n) - H.head(n)) / grid.dr;
    const Field mu_r = radial_derivative(state.rho.pow(params.alpha), grid, Parity::even);

    return state.rho * (d_u_dt + state.u * u_r) + P_r - params.alpha * visc +
           (grid.dim - 1) * mu_r * state.u / grid.cell_centers;
}

Field effective_velocity_residual(const FluidState& state, const Field& w,
                                  const Field& d_w_dt, const RadialGrid& grid,
                                  const ModelParams& params, EffectiveVelocityForm form) {
    require_valid(state, grid);
    if (w.size() != grid.n_cells || d_w_dt.size() != grid.n_cells)
        throw std::invalid_argument("effective_velocity_residual: size mismatch");
    const double a = params.pressure_coeff;

    const Field w_r = radial_derivative(w, grid, Parity::odd);
    Field res = state.rho * d_w_dt + state.rho * state.u * w_r;
    switch (form) {
        case EffectiveVelocityForm::transport:
            res += a * radial_derivative(state.rho.pow(params.gamma), grid, Parity::even);
            break;
        case EffectiveVelocityForm::damping:
            res += (a * params.gamma / params.alpha) *
                   state.rho.pow(params.gamma + 1.0 - params.alpha) * (w - state.u);
            break;
    }
    return res;
}

}  // namespace radns
