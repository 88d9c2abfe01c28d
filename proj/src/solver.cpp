#include "radns/solver.hpp"

#include <cmath>
#include <stdexcept>

namespace radns {

void validate(const SchemeConfig& s) {
    if (!(s.cfl_number > 0.0 && s.cfl_number <= 1.0))
        throw std::invalid_argument("cfl_number must lie in (0,1]");
    if (!(s.viscous_safety > 0.0 && s.viscous_safety <= 1.0))
        throw std::invalid_argument("viscous_safety must lie in (0,1]");
}

GhostState apply_boundary(const FluidState& state, const RadialGrid& grid,
                          const ModelParams& params) {
    const int n = grid.n_cells;
    GhostState g;
    g.rho.resize(n + 4);
    g.u.resize(n + 4);
    g.rho.segment(2, n) = state.rho;
    g.u.segment(2, n) = state.u;

    // origin: rho even, u odd about r = 0
    g.rho[1] = state.rho[0];
    g.rho[0] = state.rho[1];
    g.u[1] = -state.u[0];
    g.u[0] = -state.u[1];

    // outer: mirror about the wall/far-field face
    for (int j = 0; j < 2; ++j) {
        const double rho_in = state.rho[n - 1 - j];
        const double u_in = state.u[n - 1 - j];
        if (state.regime == Regime::cauchy) {
            const double rho_far = params.far_density_or_throw();
            g.rho[n + 2 + j] = 2.0 * rho_far - rho_in;
        } else {
            g.rho[n + 2 + j] = rho_in;
        }
        g.u[n + 2 + j] = -u_in;
    }
    if (!(g.rho.head(2) > 0.0).all() || !(g.rho.tail(2) > 0.0).all())
        throw std::runtime_error(
            "nonpositive ghost density: far-field boundary state breached");
    return g;
}

std::pair<double, double> stable_dt(const FluidState& state, const RadialGrid& grid,
                                    const ModelParams& params) {
    require_valid(state, grid);
    const double a = params.pressure_coeff;
    const double g = params.gamma;
    double adv = std::numeric_limits<double>::infinity();
    double visc = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid.n_cells; ++i) {
        const double c = std::sqrt(a * g * std::pow(state.rho[i], g - 1.0));
        const double speed = std::abs(state.u[i]) + c;
        if (speed > 0.0) adv = std::min(adv, grid.dr / speed);
        const double nu =
            (1.0 + std::abs(params.alpha - 1.0)) * std::pow(state.rho[i], params.alpha - 1.0);
        visc = std::min(visc, grid.dr * grid.dr / (2.0 * nu));
    }
    return {adv, visc};
}

namespace {

// generalized minmod slope (theta = 2)
inline double limited_slope(double left, double mid, double right, double dr) {
    const double dl = (mid - left) / dr;
    const double dr_ = (right - mid) / dr;
    if (dl * dr_ <= 0.0) return 0.0;
    const double dc = 0.5 * (dl + dr_);
    const double s = dl > 0.0 ? 1.0 : -1.0;
    return s * std::min({2.0 * std::abs(dl), std::abs(dc), 2.0 * std::abs(dr_)});
}

struct Rhs {
    Field d_rho;  // d rho / dt
    Field d_u;    // d u / dt
    double outer_flux = 0.0;  // r^{N-1} rho u at the outer face
};

struct Workspace {
    const RadialGrid& grid;
    const ModelParams& params;
    const SchemeConfig& scheme;
    const SourceFn* sources;
    Field face_area;  // r^{N-1} at faces
    Field s_mass, s_mom;

    Workspace(const RadialGrid& g, const ModelParams& p, const SchemeConfig& sc,
              const SourceFn* src)
        : grid(g), params(p), scheme(sc), sources(src) {
        face_area = g.faces.pow(g.dim - 1);
        s_mass = Field::Zero(g.n_cells);
        s_mom = Field::Zero(g.n_cells);
    }
};

// Viscous flux H = rho^alpha (u_r + (N-1) u/r) on faces 0..n, from a
// ghost-filled state.  u/r is averaged per side over signed ghost radii, so
// the odd reflection turns face 0 into the symmetry closure N u'(0).
Field viscous_faces(const GhostState& gs, Workspace& ws) {
    const RadialGrid& g = ws.grid;
    const int n = g.n_cells;
    const int N = g.dim;
    const double alpha = ws.params.alpha;
    Field H(n + 1);
    for (int f = 0; f <= n; ++f) {
        const int L = f + 1, R = f + 2;  // extended cell indices
        const double r_L = (L - 1.5) * g.dr;
        const double r_R = (R - 1.5) * g.dr;
        const double mu_f = 0.5 * (std::pow(gs.rho[L], alpha) + std::pow(gs.rho[R], alpha));
        const double u_r = (gs.u[R] - gs.u[L]) / g.dr;
        const double u_over_r = 0.5 * (gs.u[L] / r_L + gs.u[R] / r_R);
        H[f] = mu_f * (u_r + (N - 1) * u_over_r);
    }
    return H;
}

Rhs evaluate_rhs(const FluidState& state, Workspace& ws, double t, bool include_viscous) {
    const RadialGrid& g = ws.grid;
    const int n = g.n_cells;
    const int N = g.dim;
    const double dr = g.dr;
    const double alpha = ws.params.alpha;
    const double gamma = ws.params.gamma;
    const double a = ws.params.pressure_coeff;

    const GhostState gs = apply_boundary(state, g, ws.params);
    const Field mu_ext = gs.rho.pow(alpha);
    const Field P_ext = a * gs.rho.pow(gamma);

    if (ws.sources) {
        (*ws.sources)(t, ws.s_mass, ws.s_mom);
    }

    Rhs rhs;
    rhs.d_rho.resize(n);
    rhs.d_u.resize(n);

    // --- continuity: conservative face fluxes of r^{N-1} rho u ---
    Field slope_rho;
    if (ws.scheme.advection == Advection::muscl_minmod) {
        slope_rho.resize(n + 2);  // slopes for cells -1..n (ext idx 1..n+2)
        for (int j = 1; j <= n + 2; ++j)
            slope_rho[j - 1] = limited_slope(gs.rho[j - 1], gs.rho[j], gs.rho[j + 1], dr);
    }
    Field flux(n + 1);
    flux[0] = 0.0;  // face area r^{N-1} vanishes at the origin
    for (int f = 1; f <= n; ++f) {
        const double u_face = 0.5 * (gs.u[f + 1] + gs.u[f + 2]);
        double rho_face;
        if (ws.scheme.advection == Advection::upwind1) {
            rho_face = u_face >= 0.0 ? gs.rho[f + 1] : gs.rho[f + 2];
        } else {
            rho_face = u_face >= 0.0 ? gs.rho[f + 1] + 0.5 * dr * slope_rho[f]
                                     : gs.rho[f + 2] - 0.5 * dr * slope_rho[f + 1];
        }
        flux[f] = ws.face_area[f] * rho_face * u_face;
    }
    for (int i = 0; i < n; ++i)
        rhs.d_rho[i] = -(flux[i + 1] - flux[i]) / g.metric_weights[i] + ws.s_mass[i];
    rhs.outer_flux = flux[n];

    // --- momentum, nonconservative form ---
    Field slope_u;
    if (ws.scheme.advection == Advection::muscl_minmod) {
        slope_u.resize(n + 2);
        for (int j = 1; j <= n + 2; ++j)
            slope_u[j - 1] = limited_slope(gs.u[j - 1], gs.u[j], gs.u[j + 1], dr);
    }
    Field H;
    if (include_viscous) H = viscous_faces(gs, ws);

    for (int i = 0; i < n; ++i) {
        const int j = i + 2;  // extended index
        const double ui = gs.u[j];

        double du;  // upwinded u_r
        if (ws.scheme.advection == Advection::upwind1) {
            du = ui >= 0.0 ? (gs.u[j] - gs.u[j - 1]) / dr : (gs.u[j + 1] - gs.u[j]) / dr;
        } else {
            // Fromm-type: difference of upwind-side face reconstructions
            du = ui >= 0.0
                     ? (gs.u[j] - gs.u[j - 1]) / dr + 0.5 * (slope_u[i + 1] - slope_u[i])
                     : (gs.u[j + 1] - gs.u[j]) / dr - 0.5 * (slope_u[i + 2] - slope_u[i + 1]);
        }

        const double P_r = (P_ext[j + 1] - P_ext[j - 1]) / (2.0 * dr);
        const double mu_r = (mu_ext[j + 1] - mu_ext[j - 1]) / (2.0 * dr);
        const double rho_i = gs.rho[j];

        double acc = -ui * du - P_r / rho_i - (N - 1) * mu_r * ui / (g.cell_centers[i] * rho_i) +
                     ws.s_mom[i] / rho_i;
        if (include_viscous) acc += alpha * (H[i + 1] - H[i]) / (dr * rho_i);
        rhs.d_u[i] = acc;
    }
    return rhs;
}

// Backward-Euler solve of u - dt/rho * [alpha (H(u))_r - (N-1)(rho^alpha)_r u / r] = u_star
// on the post-advection density; Thomas algorithm on the tridiagonal system.
void implicit_viscous_solve(FluidState& state, Workspace& ws, double dt) {
    const RadialGrid& g = ws.grid;
    const int n = g.n_cells;
    const int N = g.dim;
    const double dr = g.dr;
    const double alpha = ws.params.alpha;

    const GhostState gs = apply_boundary(state, g, ws.params);
    const Field mu_ext = gs.rho.pow(alpha);

    Field lower = Field::Zero(n), diag = Field::Zero(n), upper = Field::Zero(n);
    Field rhs = state.u;

    // H_f = mu_f [ (u_R - u_L)/dr + (N-1)(u_L/r_L + u_R/r_R)/2 ], matching
    // viscous_faces; derivatives of H in u give the tridiagonal bands
    Field mu_face(n + 1);
    for (int f = 0; f <= n; ++f)
        mu_face[f] = 0.5 * (mu_ext[f + 1] + mu_ext[f + 2]);
    auto r_of = [&](int ext) { return (ext - 1.5) * dr; };  // signed center radius

    for (int i = 0; i < n; ++i) {
        const int j = i + 2;
        const double s = alpha * dt / (gs.rho[j] * dr);  // scales dH across the cell
        double d = 1.0;
        // damping companion term, implicit on the diagonal
        const double mu_r = (mu_ext[j + 1] - mu_ext[j - 1]) / (2.0 * dr);
        d += dt * (N - 1) * mu_r / (g.cell_centers[i] * gs.rho[j]);

        if (i == 0) {
            // inner ghost u_{-1} = -u_0 over r = -r_0 collapses H_0 to N mu u_0/r_0
            d += s * N * mu_face[0] / g.cell_centers[0];
        } else {
            d += s * mu_face[i] * (1.0 / dr + 0.5 * (N - 1) / r_of(j));
            lower[i] = s * mu_face[i] * (-1.0 / dr + 0.5 * (N - 1) / r_of(j - 1));
        }
        if (i == n - 1) {
            // wall face: ghost u = -u_{n-1} over the outer ghost radius
            d += s * mu_face[n] *
                 (2.0 / dr - 0.5 * (N - 1) * (1.0 / r_of(j) - 1.0 / r_of(j + 1)));
        } else {
            d += s * mu_face[i + 1] * (1.0 / dr - 0.5 * (N - 1) / r_of(j));
            upper[i] = -s * mu_face[i + 1] * (1.0 / dr + 0.5 * (N - 1) / r_of(j + 1));
        }
        diag[i] = d;
    }

    // Thomas sweep
    for (int i = 1; i < n; ++i) {
        const double m = lower[i] / diag[i - 1];
        diag[i] -= m * upper[i - 1];
        rhs[i] -= m * rhs[i - 1];
    }
    state.u[n - 1] = rhs[n - 1] / diag[n - 1];
    for (int i = n - 2; i >= 0; --i)
        state.u[i] = (rhs[i] - upper[i] * state.u[i + 1]) / diag[i];
}

}  // namespace

StepResult step(const FluidState& state, const RadialGrid& grid, const ModelParams& params,
                const SchemeConfig& scheme, std::optional<double> dt_opt,
                const SourceFn* sources) {
    validate(params);
    validate(scheme);
    require_valid(state, grid);

    const auto [adv_dt, visc_dt] = stable_dt(state, grid, params);
    const bool exp_visc = scheme.viscous_treatment == ViscousTreatment::explicit_euler;
    const double bound = exp_visc
                             ? std::min(scheme.cfl_number * adv_dt, scheme.viscous_safety * visc_dt)
                             : scheme.cfl_number * adv_dt;
    double dt = bound;
    if (dt_opt) {
        if (!(*dt_opt > 0.0)) throw std::invalid_argument("step: dt must be positive");
        if (*dt_opt > bound * (1.0 + 1e-12))
            throw std::invalid_argument("step: dt exceeds the stability bound");
        dt = *dt_opt;
    }

    StepReport report;
    report.advective_dt = adv_dt;
    report.viscous_dt = visc_dt;
    report.dt_used = dt;

    Workspace ws(grid, params, scheme, sources);
    const double t0 = state.time;

    auto advance = [&](const FluidState& from, const Rhs& rhs, double h) {
        FluidState next = from;
        next.rho = from.rho + h * rhs.d_rho;
        next.u = from.u + h * rhs.d_u;
        next.time = from.time + h;
        return next;
    };

    FluidState result = state;
    double outer_flux = 0.0;
    if (scheme.time_integrator == TimeIntegrator::forward_euler) {
        const Rhs k1 = evaluate_rhs(state, ws, t0, exp_visc);
        result = advance(state, k1, dt);
        outer_flux = dt * k1.outer_flux;
    } else {
        const Rhs k1 = evaluate_rhs(state, ws, t0, exp_visc);
        FluidState mid = advance(state, k1, dt);
        if (!mid.rho.isFinite().all() || !mid.u.isFinite().all())
            throw std::runtime_error("step produced non-finite values");
        if (!(mid.rho > 0.0).all()) {
            report.min_rho = mid.rho.minCoeff();
            report.max_rho = mid.rho.maxCoeff();
            report.step_accepted = false;
            return {state, report};
        }
        const Rhs k2 = evaluate_rhs(mid, ws, t0 + dt, exp_visc);
        result.rho = 0.5 * (state.rho + mid.rho + dt * k2.d_rho);
        result.u = 0.5 * (state.u + mid.u + dt * k2.d_u);
        result.time = t0 + dt;
        outer_flux = 0.5 * dt * (k1.outer_flux + k2.outer_flux);
    }

    if (!result.rho.isFinite().all() || !result.u.isFinite().all())
        throw std::runtime_error("step produced non-finite values");
    if (!(result.rho > 0.0).all()) {
        report.min_rho = result.rho.minCoeff();
        report.max_rho = result.rho.maxCoeff();
        report.step_accepted = false;
        return {state, report};
    }

    if (!exp_visc) implicit_viscous_solve(result, ws, dt);

    report.min_rho = result.rho.minCoeff();
    report.max_rho = result.rho.maxCoeff();
    report.outer_mass_flux = outer_flux;
    report.step_accepted = true;

    // contamination gauge over the outermost 5% of cells
    const int tail = std::max(1, grid.n_cells / 20);
    const double rho_ref = params.far_density.value_or(state.rho[grid.n_cells - 1]);
    const double c_ref = std::sqrt(std::max(params.pressure_coeff * params.gamma *
                                                std::pow(rho_ref, params.gamma - 1.0),
                                            1e-300));
    double contamination = 0.0;
    for (int i = grid.n_cells - tail; i < grid.n_cells; ++i) {
        contamination = std::max(contamination, std::abs(result.rho[i] / rho_ref - 1.0));
        contamination = std::max(contamination, std::abs(result.u[i]) / c_ref);
    }
    report.boundary_contamination = contamination;

    return {result, report};
}

}  // namespace radns
