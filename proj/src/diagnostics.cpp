#include "radns/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

namespace radns {

double integrate_rpow(const Field& f, const RadialGrid& grid, double m) {
    if (f.size() != grid.n_cells) throw std::invalid_argument("integrate_rpow: size mismatch");
    if (m >= 0.0) return (f * cell_weights_rpow(grid, m)).sum();
    return (f * grid.cell_centers.pow(m)).sum() * grid.dr;
}

std::pair<double, double> total_energy(const FluidState& state, const RadialGrid& grid,
                                       const ModelParams& params) {
    require_valid(state, grid);
    const ConstitutiveSet laws(params);
    const double kin = integrate(0.5 * state.rho * state.u.square(), grid);
    const double pot = integrate(laws.potential_energy(state.rho), grid);
    return {kin, pot};
}

EnergyRateTerms energy_rate_terms(const FluidState& s, const RadialGrid& grid,
                                  const ModelParams& params) {
    const int N = grid.dim;
    const double alpha = params.alpha;
    const Field mu = s.rho.pow(alpha);
    const Field u_r = radial_derivative(s.u, grid, Parity::odd);

    EnergyRateTerms t;
    t.dissipation = alpha * integrate_rpow(mu * u_r.square(), grid, N - 1) +
                    (N - 1) * (alpha * (N - 1) - (N - 2)) *
                        integrate_rpow(mu * s.u.square(), grid, N - 3);
    t.production = 2.0 * (N - 1) * (1.0 - alpha) * integrate_rpow(mu * s.u * u_r, grid, N - 2);
    return t;
}

namespace {

FluidState midpoint(const FluidState& a, const FluidState& b) {
    FluidState m = a;
    m.rho = 0.5 * (a.rho + b.rho);
    m.u = 0.5 * (a.u + b.u);
    m.time = 0.5 * (a.time + b.time);
    return m;
}

double bd_total(const FluidState& s, const RadialGrid& grid, const ModelParams& params) {
    const ConstitutiveSet laws(params);
    const Field w = effective_velocity(s, grid, params);
    return integrate(0.5 * s.rho * w.square() + laws.potential_energy(s.rho), grid);
}

double bd_rate(const FluidState& s, const RadialGrid& grid, const ModelParams& params) {
    const Field dmu = radial_derivative(s.rho.pow(params.alpha), grid, Parity::even);
    return (params.pressure_coeff * params.gamma / params.alpha) *
           integrate(s.rho.pow(params.gamma - params.alpha - 1.0) * dmu.square(), grid);
}

}  // namespace

double energy_balance_residual(const FluidState& before, const FluidState& after,
                               const RadialGrid& grid, const ModelParams& params) {
    if (before.rho.size() != after.rho.size())
        throw std::invalid_argument("energy_balance_residual: mismatched states");
    const double dt = after.time - before.time;
    if (dt == 0.0) return 0.0;
    const auto [k0, p0] = total_energy(before, grid, params);
    const auto [k1, p1] = total_energy(after, grid, params);
    const EnergyRateTerms t = energy_rate_terms(midpoint(before, after), grid, params);
    return std::abs((k1 + p1 - k0 - p0) / dt + t.dissipation - t.production);
}

BdBalance bd_entropy_balance(const FluidState& before, const FluidState& after,
                             const RadialGrid& grid, const ModelParams& params) {
    if (before.rho.size() != after.rho.size())
        throw std::invalid_argument("bd_entropy_balance: mismatched states");
    BdBalance b;
    const double dt = after.time - before.time;
    b.dissipation_rate = bd_rate(dt == 0.0 ? after : midpoint(before, after), grid, params);
    if (dt == 0.0) return b;
    b.discrete_rate = (bd_total(after, grid, params) - bd_total(before, grid, params)) / dt;
    b.residual = std::abs(b.discrete_rate + b.dissipation_rate);
    return b;
}

double k_moment(const FluidState& state, const RadialGrid& grid, double k) {
    if (!(k >= 2.0)) throw std::invalid_argument("k_moment: k must be >= 2");
    return integrate(state.rho * state.u.abs().pow(k), grid);
}

double entropy_gradient_norm(const FluidState& state, const RadialGrid& grid,
                             const ModelParams& params, double weight_exponent) {
    require_valid(state, grid);
    const Field d = radial_derivative(state.rho.pow(params.alpha - 0.5), grid, Parity::even);
    return integrate_rpow(d.square(), grid, grid.dim - 1 + weight_exponent);
}

std::pair<double, double> density_extrema(const FluidState& state) {
    return {state.rho.minCoeff(), state.rho.maxCoeff()};
}

DiagnosticsSample sample_all(const FluidState& state_prev, const FluidState& state,
                             const RadialGrid& grid, const ModelParams& params,
                             const DiagnosticsConfig& config) {
    DiagnosticsSample s;
    s.time = state.time;
    std::tie(s.kinetic_energy, s.potential_energy_total) = total_energy(state, grid, params);

    const Field w = effective_velocity(state, grid, params);
    s.bd_kinetic = integrate(0.5 * state.rho * w.square(), grid);

    const BdBalance bd = bd_entropy_balance(state_prev, state, grid, params);
    s.bd_dissipation_rate = bd.dissipation_rate;
    s.bd_balance_residual = bd.residual;
    s.bd_discrete_rate = bd.discrete_rate;
    s.energy_balance_residual = energy_balance_residual(state_prev, state, grid, params);

    for (double k : config.k_moments) s.k_moments.emplace_back(k, k_moment(state, grid, k));

    for (const auto& spec : config.weighted_norms) {
        Field f;
        switch (spec.field) {
            case NormField::rho: f = state.rho; break;
            case NormField::rho_minus_far: f = state.rho - params.far_density_or_throw(); break;
            case NormField::u: f = state.u; break;
            case NormField::w: f = w; break;
            case NormField::grad_rho:
                f = radial_derivative(state.rho, grid, Parity::even);
                break;
        }
        const double lo = spec.lo;
        const double hi = spec.hi > spec.lo ? spec.hi : grid.r_max;
        s.weighted_norms.emplace_back(spec.tag,
                                      weighted_lp_norm(f, grid, spec.p, spec.xi, lo, hi));
    }

    std::tie(s.min_rho, s.max_rho) = density_extrema(state);
    s.grad_entropy_norm = entropy_gradient_norm(state, grid, params);
    return s;
}

}  // namespace radns
