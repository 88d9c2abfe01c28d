#include <doctest.h>

#include <cmath>

#include "radns/diagnostics.hpp"
#include "radns/verification.hpp"

using namespace radns;

namespace {

ModelParams params(int dim = 2, double alpha = 0.7, double gamma = 2.0) {
    return {.dim = dim, .alpha = alpha, .gamma = gamma, .far_density = 1.0};
}

FluidState constant_state(const RadialGrid& g) {
    FluidState s;
    s.rho = Field::Constant(g.n_cells, 1.0);
    s.u = Field::Zero(g.n_cells);
    return s;
}

FluidState smooth_state(const RadialGrid& g) {
    const Field& r = g.cell_centers;
    FluidState s;
    s.rho = 1.0 + 0.3 * ((-(r - 1.5).square()).exp() + (-(r + 1.5).square()).exp());
    s.u = 0.2 * r * (-r.square()).exp();
    return s;
}

}  // namespace

TEST_CASE("total_energy: constant state has zero energies") {
    const RadialGrid g = build_grid(64, 4.0, 3);
    const auto [kin, pot] = total_energy(constant_state(g), g, params(3));
    CHECK(kin == 0.0);
    CHECK(std::abs(pot) < 1e-14);
}

TEST_CASE("total_energy: kinetic part against the quadrature oracle") {
    const RadialGrid g = build_grid(65536, 10.0, 2);
    FluidState s = constant_state(g);
    s.u = g.cell_centers * (-g.cell_centers.square()).exp();
    const auto [kin, pot] = total_energy(s, g, params(2));
    const double oracle = adaptive_quadrature(
        [](double r) { return 0.5 * r * r * std::exp(-2.0 * r * r) * r; }, 0.0, 10.0, 1e-13);
    CHECK(std::abs(kin - oracle) / oracle < 1e-8);
    CHECK(std::abs(kin - 1.0 / 16.0) / (1.0 / 16.0) < 1e-8);
    CHECK(std::abs(pot) < 1e-12);
}

TEST_CASE("total_energy: potential part against the quadrature oracle") {
    const RadialGrid g = build_grid(65536, 10.0, 2);
    const ModelParams p = params(2, 0.7, 2.0);
    FluidState s = constant_state(g);
    s.rho = 1.0 + 0.5 * ((-(g.cell_centers - 2.0).square() / 0.25).exp() +
                         (-(g.cell_centers + 2.0).square() / 0.25).exp());
    const auto [kin, pot] = total_energy(s, g, p);
    const double oracle = adaptive_quadrature(
        [](double r) {
            const double rho = 1.0 + 0.5 * (std::exp(-(r - 2.0) * (r - 2.0) / 0.25) +
                                            std::exp(-(r + 2.0) * (r + 2.0) / 0.25));
            return (rho * rho - 2.0 * rho + 1.0) * r;
        },
        0.0, 10.0, 1e-13);
    CHECK(kin == 0.0);
    CHECK(std::abs(pot - oracle) / oracle < 1e-8);
}

TEST_CASE("energy balance: constant pair gives zero residual") {
    const RadialGrid g = build_grid(64, 4.0, 3);
    FluidState a = constant_state(g);
    FluidState b = a;
    b.time = 0.01;
    CHECK(energy_balance_residual(a, b, g, params(3)) == 0.0);
    const BdBalance bd = bd_entropy_balance(a, b, g, params(3));
    CHECK(bd.residual == 0.0);
    CHECK(bd.discrete_rate == 0.0);
}

TEST_CASE("energy production term vanishes identically at alpha = 1") {
    const RadialGrid g = build_grid(128, 4.0, 2);
    const FluidState s = smooth_state(g);
    const EnergyRateTerms t1 = energy_rate_terms(s, g, params(2, 1.0));
    CHECK(t1.production == 0.0);
    CHECK(t1.dissipation > 0.0);
    const EnergyRateTerms t2 = energy_rate_terms(s, g, params(2, 0.7));
    CHECK(t2.production != 0.0);
}

TEST_CASE("energy and BD residuals shrink under joint (dr, dt) refinement") {
    const ModelParams p{.dim = 3, .alpha = 0.75, .gamma = 1.4, .far_density = 1.0};
    SchemeConfig scheme;
    double prev_e = 0.0, prev_bd = 0.0;
    double dt = 0.0;
    for (int n : {64, 128}) {
        const RadialGrid g = build_grid(n, 6.0, 3);
        FluidState s = smooth_state(g);
        s.regime = Regime::cauchy;
        if (dt == 0.0) {
            const auto [adv, visc] = stable_dt(s, g, p);
            dt = 0.5 * std::min(scheme.cfl_number * adv, scheme.viscous_safety * visc);
        } else {
            dt *= 0.25;
        }
        // advance a fixed horizon, then measure one-step residuals
        const double horizon = 32.0 * dt;
        FluidState prev = s;
        while (s.time < horizon - 1e-14) {
            const StepResult r = step(s, g, p, scheme, dt);
            REQUIRE(r.report.step_accepted);
            prev = s;
            s = r.state;
        }
        const double e_res = energy_balance_residual(prev, s, g, p);
        const double bd_res = bd_entropy_balance(prev, s, g, p).residual;
        if (prev_e > 0.0) {
            CHECK(prev_e / e_res > 3.0);
            CHECK(prev_bd / bd_res > 3.0);
        }
        prev_e = e_res;
        prev_bd = bd_res;
    }
}

TEST_CASE("pressure-free debug mode: BD dissipation rate is exactly zero") {
    const RadialGrid g = build_grid(128, 6.0, 3);
    ModelParams p{.dim = 3, .alpha = 0.75, .gamma = 1.4, .pressure_coeff = 0.0,
                  .far_density = 1.0};
    SchemeConfig scheme;
    FluidState s = smooth_state(g);
    s.regime = Regime::ball;
    const FluidState s0 = s;
    const auto [adv, visc] = stable_dt(s, g, p);
    const double dt = std::min(0.4 * adv, 0.4 * visc);
    FluidState prev = s;
    for (int k = 0; k < 20; ++k) {
        const StepResult r = step(s, g, p, scheme, dt);
        REQUIRE(r.report.step_accepted);
        prev = s;
        s = r.state;
    }
    const BdBalance bd = bd_entropy_balance(prev, s, g, p);
    CHECK(bd.dissipation_rate == 0.0);
    // with the gamma-term disabled the BD kinetic energy moves only by
    // discretization error
    const Field w0 = effective_velocity(s0, g, p);
    const Field w1 = effective_velocity(s, g, p);
    const double bdk0 = integrate(0.5 * s0.rho * w0.square(), g);
    const double bdk1 = integrate(0.5 * s.rho * w1.square(), g);
    CHECK(std::abs(bdk1 - bdk0) / bdk0 < 1e-3);
}

TEST_CASE("k-moments") {
    const RadialGrid g = build_grid(256, 5.0, 2);
    const FluidState rest = constant_state(g);
    CHECK(k_moment(rest, g, 3.0) == 0.0);

    const FluidState s = smooth_state(g);
    const auto [kin, pot] = total_energy(s, g, params(2));
    CHECK(std::abs(k_moment(s, g, 2.0) - 2.0 * kin) <= 1e-14 * 2.0 * kin);
    CHECK_THROWS_AS(k_moment(s, g, 1.5), std::invalid_argument);

    // analytic profile: rho = 1, u = r e^{-r^2}, k = 3, N = 2
    const RadialGrid fine = build_grid(65536, 10.0, 2);
    FluidState a = constant_state(fine);
    a.u = fine.cell_centers * (-fine.cell_centers.square()).exp();
    const double oracle = adaptive_quadrature(
        [](double r) { return std::pow(r * std::exp(-r * r), 3.0) * r; }, 0.0, 10.0, 1e-13);
    CHECK(std::abs(k_moment(a, fine, 3.0) - oracle) / oracle < 1e-8);
}

TEST_CASE("entropy gradient norm: constant density and analytic decay profile") {
    const RadialGrid g = build_grid(128, 4.0, 2);
    CHECK(entropy_gradient_norm(constant_state(g), g, params(2, 0.75)) == 0.0);

    // rho = e^{-r}, alpha = 3/4: |d_r rho^{1/4}|^2 = e^{-r/2}/16
    const RadialGrid fine = build_grid(16384, 50.0, 2);
    FluidState s;
    s.rho = (-fine.cell_centers).exp();
    s.u = Field::Zero(fine.n_cells);
    const double v0 = entropy_gradient_norm(s, fine, params(2, 0.75), 0.0);
    CHECK(std::abs(v0 - 0.25) / 0.25 < 1e-4);  // int r e^{-r/2}/16 = 1/4
    const double v1 = entropy_gradient_norm(s, fine, params(2, 0.75), 1.0);
    CHECK(std::abs(v1 - 1.0) < 1e-4);  // int r^2 e^{-r/2}/16 = 1
}

TEST_CASE("bd_kinetic reduces to kinetic energy on constant density") {
    const RadialGrid g = build_grid(256, 5.0, 3);
    const ModelParams p = params(3);
    FluidState s = constant_state(g);
    s.u = 0.3 * g.cell_centers * (-g.cell_centers.square()).exp();
    const DiagnosticsSample d = sample_all(s, s, g, p, {});
    CHECK(d.bd_kinetic == doctest::Approx(d.kinetic_energy).epsilon(1e-14));
}

TEST_CASE("sample_all: constant run is all zeros except extrema, deterministic") {
    const RadialGrid g = build_grid(64, 4.0, 3);
    const ModelParams p = params(3);
    DiagnosticsConfig cfg;
    cfg.k_moments = {2.0, 3.0};
    cfg.weighted_norms.push_back(
        {.tag = "u_2_0.25", .field = NormField::u, .p = 2.0, .xi = 0.25});

    const FluidState s = constant_state(g);
    const DiagnosticsSample d = sample_all(s, s, g, p, cfg);
    CHECK(d.kinetic_energy == 0.0);
    CHECK(std::abs(d.potential_energy_total) < 1e-14);
    CHECK(d.bd_kinetic == 0.0);
    CHECK(d.bd_dissipation_rate == 0.0);
    CHECK(d.energy_balance_residual == 0.0);
    CHECK(d.bd_balance_residual == 0.0);
    CHECK(d.grad_entropy_norm == 0.0);
    CHECK(d.min_rho == 1.0);
    CHECK(d.max_rho == 1.0);
    REQUIRE(d.k_moments.size() == 2);
    CHECK(d.k_moments[0].second == 0.0);
    REQUIRE(d.weighted_norms.size() == 1);
    CHECK(d.weighted_norms[0].second == 0.0);

    const DiagnosticsSample again = sample_all(s, s, g, p, cfg);
    CHECK(again.kinetic_energy == d.kinetic_energy);
    CHECK(again.potential_energy_total == d.potential_energy_total);
}

TEST_CASE("all quadratic functionals are nonnegative on a generic state") {
    const RadialGrid g = build_grid(128, 5.0, 2);
    const ModelParams p = params(2);
    const FluidState s = smooth_state(g);
    const DiagnosticsSample d = sample_all(s, s, g, p, {.k_moments = {2, 3, 4}});
    CHECK(d.kinetic_energy >= 0.0);
    CHECK(d.potential_energy_total >= 0.0);
    CHECK(d.bd_kinetic >= 0.0);
    CHECK(d.bd_dissipation_rate >= 0.0);
    CHECK(d.grad_entropy_norm >= 0.0);
    for (const auto& [k, v] : d.k_moments) CHECK(v >= 0.0);
}

TEST_CASE("density extrema") {
    const RadialGrid g = build_grid(512, 8.0, 3);
    const ModelParams p = params(3);
    InitialDataSpec bump{.kind = InitialKind::gaussian_bump,
                         .amplitude = 0.5,
                         .center = 2.0,
                         .width = 0.5};
    const FluidState s = make_initial_data(bump, g, p, Regime::cauchy);
    const auto [lo, hi] = density_extrema(s);
    CHECK(lo == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(hi == doctest::Approx(1.5).epsilon(2.0 * g.dr));
}
