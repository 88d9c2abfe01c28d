#include "radns/verification.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace radns {

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double tol,
                        int depth, double partial) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double h = b - a;
    const double left = h / 12.0 * (fa + 4.0 * flm + fm);
    const double right = h / 12.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    if (depth <= 0) {
        std::ostringstream msg;
        msg << "adaptive_quadrature: subdivision budget exhausted; partial estimate "
            << partial + left + right;
        throw std::runtime_error(msg.str());
    }
    const double l = adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1,
                                      partial + right);
    return l + adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1,
                                partial + l);
}

}  // namespace

double adaptive_quadrature(const std::function<double(double)>& f, double lo, double hi,
                           double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("adaptive_quadrature: tol must be positive");
    if (lo == hi) return 0.0;
    const double fa = f(lo);
    const double fm = f(0.5 * (lo + hi));
    const double fb = f(hi);
    if (!std::isfinite(fa) || !std::isfinite(fm) || !std::isfinite(fb))
        throw std::invalid_argument("adaptive_quadrature: integrand not finite");
    const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, lo, hi, fa, fm, fb, whole, tol, 48, 0.0);
}

ManufacturedCase::ManufacturedCase(ModelParams p, double A, double B, double t_end)
    : params(p), amplitude(A), velocity_amplitude(B), t_max(t_end) {
    validate(params);
    const double rho_far = params.far_density_or_throw();
    if (!(std::abs(A) <= 0.5 * rho_far))
        throw std::invalid_argument("manufactured amplitude must satisfy |A| <= rho_far/2");
    if (!(t_end > 0.0)) throw std::invalid_argument("manufactured t_max must be positive");
}

double ManufacturedCase::exact_rho(double r, double t) const {
    return *params.far_density + amplitude * std::exp(-t) * std::exp(-r * r);
}

double ManufacturedCase::exact_u(double r, double t) const {
    return velocity_amplitude * t * r * std::exp(-r * r);
}

Field ManufacturedCase::exact_rho(const RadialGrid& grid, double t) const {
    return *params.far_density +
           amplitude * std::exp(-t) * (-grid.cell_centers.square()).exp();
}

Field ManufacturedCase::exact_u(const RadialGrid& grid, double t) const {
    return velocity_amplitude * t * grid.cell_centers * (-grid.cell_centers.square()).exp();
}

FluidState ManufacturedCase::exact_state(const RadialGrid& grid, double t,
                                         Regime regime) const {
    FluidState s;
    s.time = t;
    s.regime = regime;
    s.rho = exact_rho(grid, t);
    s.u = exact_u(grid, t);
    return s;
}

MmsSources mms_sources(const ManufacturedCase& c, const RadialGrid& grid, double t) {
    if (!(t >= 0.0 && t <= c.t_max))
        throw std::invalid_argument("mms_sources: time outside validity window");
    const int n = grid.n_cells;
    const int N = grid.dim;
    const double A = c.amplitude;
    const double B = c.velocity_amplitude;
    const double rho_far = *c.params.far_density;
    const double alpha = c.params.alpha;
    const double gamma = c.params.gamma;
    const double a = c.params.pressure_coeff;

    MmsSources s;
    s.mass.resize(n);
    s.momentum.resize(n);
    for (int i = 0; i < n; ++i) {
        const double r = grid.cell_centers[i];
        const double r2 = r * r;
        const double G = std::exp(-r2);
        const double E = A * std::exp(-t) * G;  // rho - rho_far
        const double rho = rho_far + E;
        const double BtG = B * t * G;

        // continuity: rho_t + (rho u)_r + (N-1) rho u / r
        s.mass[i] = -E + BtG * (rho * (N - 2.0 * r2) - 2.0 * r2 * E);

        // momentum, same grouping as the PDE
        const double mu = std::pow(rho, alpha);
        const double mu1 = alpha * std::pow(rho, alpha - 1.0);
        const double u_t = B * r * G;
        const double uu_r = B * B * t * t * r * G * G * (1.0 - 2.0 * r2);
        const double press = -2.0 * a * gamma * std::pow(rho, gamma - 1.0) * r * E;
        const double H_r =
            -2.0 * r * BtG * (mu1 * E * (N - 2.0 * r2) + mu * (N - 2.0 * r2 + 2.0));
        const double damping = -2.0 * (N - 1.0) * mu1 * r * E * BtG;  // (N-1)(rho^a)_r u / r
        s.momentum[i] = rho * (u_t + uu_r) + press - alpha * H_r + damping;
    }
    return s;
}

namespace {

// 6th-order central first derivative of a callable
template <typename F>
double d6(const F& f, double x, double h) {
    return (-f(x - 3.0 * h) + 9.0 * f(x - 2.0 * h) - 45.0 * f(x - h) + 45.0 * f(x + h) -
            9.0 * f(x + 2.0 * h) + f(x + 3.0 * h)) /
           (60.0 * h);
}

}  // namespace

double mms_source_stencil_error(const ManufacturedCase& c, const RadialGrid& grid, double t) {
    const MmsSources hand = mms_sources(c, grid, t);
    const int N = grid.dim;
    const double alpha = c.params.alpha;
    const double gamma = c.params.gamma;
    const double a = c.params.pressure_coeff;
    const double h = 0.02;

    auto rho_at = [&](double r, double tt) { return c.exact_rho(r, tt); };
    auto u_at = [&](double r, double tt) { return c.exact_u(r, tt); };
    auto H_at = [&](double r, double tt) {
        const double ur = d6([&](double x) { return u_at(x, tt); }, r, h);
        return std::pow(rho_at(r, tt), alpha) * (ur + (N - 1) * u_at(r, tt) / r);
    };

    double worst = 0.0;
    for (int i = 0; i < grid.n_cells; ++i) {
        const double r = grid.cell_centers[i];
        if (r < 6.5 * h) continue;  // keep the nested stencils strictly right of r = 0
        const double rho = rho_at(r, t);
        const double u = u_at(r, t);

        const double rho_t = d6([&](double s) { return rho_at(r, s); }, t, h);
        const double flux_r = d6([&](double x) { return rho_at(x, t) * u_at(x, t); }, r, h);
        const double mass = rho_t + flux_r + (N - 1) * rho * u / r;

        const double u_t = d6([&](double s) { return u_at(r, s); }, t, h);
        const double u_r = d6([&](double x) { return u_at(x, t); }, r, h);
        const double P_r =
            d6([&](double x) { return a * std::pow(rho_at(x, t), gamma); }, r, h);
        const double H_r = d6([&](double x) { return H_at(x, t); }, r, h);
        const double mu_r =
            d6([&](double x) { return std::pow(rho_at(x, t), alpha); }, r, h);
        const double mom = rho * (u_t + u * u_r) + P_r - alpha * H_r + (N - 1) * mu_r * u / r;

        worst = std::max(worst, std::abs(mass - hand.mass[i]));
        worst = std::max(worst, std::abs(mom - hand.momentum[i]));
    }
    return worst;
}

ManufacturedCase builtin_manufactured_case() {
    ModelParams p;
    p.dim = 3;
    p.alpha = 0.75;
    p.gamma = 1.4;
    p.pressure_coeff = 1.0;
    p.far_density = 1.0;
    return ManufacturedCase(p, 0.3, 3.0, 1.0);
}

OrderBand contracted_order_band(Advection advection) {
    return advection == Advection::muscl_minmod ? OrderBand{1.8, 2.2} : OrderBand{0.8, 1.2};
}

ConvergenceStudy convergence_study(const ManufacturedCase& c, const SchemeConfig& scheme,
                                   const std::vector<int>& sizes,
                                   const ConvergenceOptions& opts) {
    if (sizes.size() < 3)
        throw std::invalid_argument("convergence_study: need at least three grid sizes");
    for (std::size_t i = 1; i < sizes.size(); ++i)
        if (sizes[i] != 2 * sizes[i - 1])
            throw std::invalid_argument("convergence_study: sizes must refine by factor 2");
    if (!(opts.t_end > 0.0 && opts.t_end <= c.t_max))
        throw std::invalid_argument("convergence_study: t_end outside validity window");

    ConvergenceStudy out;
    out.sizes = sizes;

    // dt tied to dr^2, anchored at the coarsest grid's stability bound
    const RadialGrid coarse = build_grid(sizes.front(), opts.r_max, c.params.dim);
    const FluidState s0 = c.exact_state(coarse, 0.0, opts.regime);
    const auto [adv0, visc0] = stable_dt(s0, coarse, c.params);
    const double dt_coeff =
        0.5 * std::min(scheme.cfl_number * adv0, scheme.viscous_safety * visc0) /
        (coarse.dr * coarse.dr);

    for (int n : sizes) {
        const RadialGrid grid = build_grid(n, opts.r_max, c.params.dim);
        FluidState state = c.exact_state(grid, 0.0, opts.regime);

        const double dt0 = dt_coeff * grid.dr * grid.dr;
        const long n_steps = static_cast<long>(std::ceil(opts.t_end / dt0));
        const double dt = opts.t_end / static_cast<double>(n_steps);

        SourceFn src = [&](double t, Field& s_mass, Field& s_mom) {
            const MmsSources s = mms_sources(c, grid, t);
            s_mass = s.mass;
            s_mom = s.momentum;
        };
        for (long k = 0; k < n_steps; ++k) {
            StepResult r = step(state, grid, c.params, scheme, dt, &src);
            if (!r.report.step_accepted)
                throw std::runtime_error("convergence_study: step rejected");
            state = r.state;
        }

        const Field rho_err = state.rho - c.exact_rho(grid, state.time);
        const Field u_err = state.u - c.exact_u(grid, state.time);
        out.rho_errors.push_back(std::sqrt(integrate(rho_err.square(), grid)));
        out.u_errors.push_back(std::sqrt(integrate(u_err.square(), grid)));
    }

    // least-squares slope of log(err) vs log(dr); dr halves between sizes
    auto fit_order = [&](const std::vector<double>& errs) {
        const std::size_t m = errs.size();
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < m; ++i) {
            const double x = -static_cast<double>(i) * std::log(2.0);
            const double y = std::log(errs[i]);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        return (m * sxy - sx * sy) / (m * sxx - sx * sx);
    };

    const double floor_err = 1e-13;
    out.exact = true;
    for (double e : out.rho_errors) out.exact = out.exact && e < floor_err;
    for (double e : out.u_errors) out.exact = out.exact && e < floor_err;
    if (!out.exact) {
        out.rho_order = fit_order(out.rho_errors);
        out.u_order = fit_order(out.u_errors);
        for (std::size_t i = 1; i < sizes.size(); ++i) {
            if (out.rho_errors[i] >= out.rho_errors[i - 1]) out.monotone = false;
            if (out.u_errors[i] >= out.u_errors[i - 1]) out.monotone = false;
        }
    }
    return out;
}

}  // namespace radns
