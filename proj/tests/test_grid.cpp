#include <doctest.h>

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "radns/grid.hpp"
#include "radns/verification.hpp"

using namespace radns;

namespace {

ModelParams params3() {
    return {.dim = 3, .alpha = 0.7, .gamma = 1.4, .far_density = 1.0};
}

}  // namespace

TEST_CASE("build_grid geometry and exact weights") {
    const RadialGrid g2 = build_grid(8, 1.0, 2);
    CHECK(g2.metric_weights.sum() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(g2.dr == doctest::Approx(0.125));
    CHECK(g2.cell_centers[0] == doctest::Approx(0.0625));
    CHECK(g2.faces[0] == 0.0);

    const RadialGrid g3 = build_grid(8, 2.0, 3);
    CHECK(g3.metric_weights.sum() == doctest::Approx(8.0 / 3.0).epsilon(1e-12));

    const RadialGrid fine = build_grid(1024, 10.0, 3);
    CHECK(fine.dr == doctest::Approx(10.0 / 1024).epsilon(1e-15));
    for (int i = 1; i < fine.n_cells; ++i)
        CHECK(fine.cell_centers[i] > fine.cell_centers[i - 1]);
    CHECK(fine.cell_centers[0] > 0.0);

    CHECK_THROWS_AS(build_grid(4, 1.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(16, -1.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(16, 1.0, 4), std::invalid_argument);
}

TEST_CASE("grid weights reproduce monomial integrals to second order") {
    for (int dim : {2, 3}) {
        const RadialGrid g = build_grid(256, 2.0, dim);
        for (int m : {1, 2, 3, 4}) {
            const double discrete = (g.cell_centers.pow(m) * g.metric_weights).sum();
            const double exact = std::pow(2.0, m + dim) / (m + dim);
            CHECK(std::abs(discrete - exact) / exact < 2.0 * g.dr * g.dr);
        }
    }
}

TEST_CASE("make_initial_data: constant and gaussian bump") {
    const RadialGrid g = build_grid(512, 8.0, 3);
    const ModelParams p = params3();

    InitialDataSpec constant;
    const FluidState s0 = make_initial_data(constant, g, p, Regime::cauchy);
    CHECK((s0.rho == 1.0).all());
    CHECK((s0.u == 0.0).all());

    InitialDataSpec bump{.kind = InitialKind::gaussian_bump,
                         .amplitude = 0.5,
                         .center = 2.0,
                         .width = 0.5};
    std::vector<std::string> warnings;
    const FluidState s1 = make_initial_data(bump, g, p, Regime::cauchy, &warnings);
    CHECK(warnings.empty());
    CHECK(s1.rho.minCoeff() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(s1.rho.maxCoeff() == doctest::Approx(1.5).epsilon(2.0 * g.dr));

    InitialDataSpec bad = bump;
    bad.amplitude = -1.0;
    CHECK_THROWS_AS(make_initial_data(bad, g, p, Regime::cauchy), std::invalid_argument);

    InitialDataSpec wide = bump;
    wide.center = 7.5;
    warnings.clear();
    make_initial_data(wide, g, p, Regime::cauchy, &warnings);
    CHECK(warnings.size() == 1);
}

TEST_CASE("make_initial_data: velocity profile peak") {
    const RadialGrid g = build_grid(4096, 6.0, 2);
    InitialDataSpec spec{.velocity_amplitude = 1.0, .velocity_width = 1.0};
    const FluidState s = make_initial_data(spec, g, params3(), Regime::cauchy);
    // u = r exp(-r^2) peaks at r = 1/sqrt(2) with value exp(-1/2)/sqrt(2)
    int argmax = 0;
    s.u.maxCoeff(&argmax);
    CHECK(std::abs(g.cell_centers[argmax] - 1.0 / std::sqrt(2.0)) < 2.0 * g.dr);
    CHECK(s.u.maxCoeff() == doctest::Approx(0.428882).epsilon(1e-4));
    CHECK(std::abs(s.u[0]) < 2.0 * g.dr);  // odd-compatible near the origin
}

TEST_CASE("make_initial_data: compacted bump has compact support") {
    const RadialGrid g = build_grid(512, 8.0, 3);
    InitialDataSpec spec{.kind = InitialKind::compacted_bump,
                         .amplitude = 0.3,
                         .center = 2.0,
                         .width = 1.0};
    const FluidState s = make_initial_data(spec, g, params3(), Regime::cauchy);
    CHECK(s.rho.maxCoeff() == doctest::Approx(1.3).epsilon(2.0 * g.dr));
    for (int i = 0; i < g.n_cells; ++i)
        if (std::abs(g.cell_centers[i] - 2.0) >= 1.0) CHECK(s.rho[i] == 1.0);
}

TEST_CASE("make_initial_data: custom table interpolates") {
    const std::string path = "test_table.txt";
    {
        std::ofstream out(path);
        out << "# r rho u\n";
        out << "0 2.0 0\n";
        out << "1 1.0 0.5\n";
        out << "4 1.0 0\n";
    }
    const RadialGrid g = build_grid(64, 4.0, 2);
    InitialDataSpec spec{.kind = InitialKind::custom_table, .table_file = path};
    const FluidState s = make_initial_data(spec, g, params3(), Regime::cauchy);
    // a point inside the first segment: rho = 2 - r, u = r/2
    const int i = 8;
    const double r = g.cell_centers[i];
    REQUIRE(r < 1.0);
    CHECK(s.rho[i] == doctest::Approx(2.0 - r).epsilon(1e-12));
    CHECK(s.u[i] == doctest::Approx(0.5 * r).epsilon(1e-12));
    std::remove(path.c_str());
}

TEST_CASE("mass_coordinate: constant density closed form and monotonicity") {
    const RadialGrid g = build_grid(256, 2.0, 3);
    const ModelParams p = params3();
    FluidState s = make_initial_data({}, g, p, Regime::cauchy);
    const Field y = mass_coordinate(s, g);
    for (int i = 0; i < g.n_cells; ++i) {
        const double r = g.cell_centers[i];
        CHECK(y[i] == doctest::Approx(r * r * r / 3.0).epsilon(1e-13));
    }

    InitialDataSpec bump{.kind = InitialKind::gaussian_bump,
                         .amplitude = 0.4,
                         .center = 1.0,
                         .width = 0.3};
    s = make_initial_data(bump, g, p, Regime::cauchy);
    const Field yb = mass_coordinate(s, g);
    CHECK(yb[0] > 0.0);
    for (int i = 1; i < g.n_cells; ++i) CHECK(yb[i] > yb[i - 1]);
}

TEST_CASE("mass_coordinate: volume identity int rho^-1 dy = r^N / N") {
    for (int n : {128, 256}) {
        const RadialGrid g = build_grid(n, 2.0, 2);
        InitialDataSpec bump{.kind = InitialKind::gaussian_bump,
                             .amplitude = 0.5,
                             .center = 0.8,
                             .width = 0.4};
        const FluidState s = make_initial_data(bump, g, params3(), Regime::cauchy);
        const Field y = mass_coordinate(s, g);
        // trapezoid in y against rho^{-1}, independent of the construction
        double vol = y[0] / s.rho[0];
        for (int i = 1; i < g.n_cells; ++i)
            vol += 0.5 * (1.0 / s.rho[i] + 1.0 / s.rho[i - 1]) * (y[i] - y[i - 1]);
        const double r = g.cell_centers[g.n_cells - 1];
        const double exact = r * r / 2.0;
        CHECK(std::abs(vol - exact) / exact < 4.0 * g.dr * g.dr);
    }
}

TEST_CASE("constant-density mass coordinate inverts to radius") {
    const RadialGrid g = build_grid(128, 3.0, 3);
    const FluidState s = make_initial_data({}, g, params3(), Regime::cauchy);
    const Field y = mass_coordinate(s, g);
    for (int i = 0; i < g.n_cells; i += 7) {
        const double r_back = std::cbrt(3.0 * y[i] / 1.0);
        CHECK(std::abs(r_back - g.cell_centers[i]) < 4.0 * g.dr * g.dr);
    }
}

TEST_CASE("weighted_lp_norm: closed forms") {
    const RadialGrid g2 = build_grid(512, 1.0, 2);
    const Field c = Field::Constant(512, 3.0);
    CHECK(weighted_lp_norm(c, g2, 2.0) == doctest::Approx(3.0 / std::sqrt(2.0)).epsilon(1e-12));

    const Field r = g2.cell_centers;
    const double sup = weighted_lp_norm(r, g2, std::numeric_limits<double>::infinity(), 1.0,
                                        0.0, 1.0);
    CHECK(std::abs(sup - 1.0) < 2.5 * g2.dr);  // sup r^2 sampled at cell centers

    CHECK_THROWS_AS(weighted_lp_norm(c, g2, 2.0, 0.0, 0.5, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(weighted_lp_norm(c, g2, 0.5, 0.0), std::invalid_argument);
}

TEST_CASE("weighted_lp_norm matches the quadrature oracle on a bump") {
    const RadialGrid g = build_grid(8192, 8.0, 2);
    const ModelParams p{.dim = 2, .alpha = 0.6, .gamma = 1.4, .far_density = 1.0};
    InitialDataSpec bump{.kind = InitialKind::gaussian_bump,
                         .amplitude = 0.5,
                         .center = 2.0,
                         .width = 0.5};
    const FluidState s = make_initial_data(bump, g, p, Regime::cauchy);
    const double eta = 0.5;
    const double norm = weighted_lp_norm(s.rho - 1.0, g, 2.0, eta / 2.0);

    auto integrand = [&](double r) {
        const double w2 = 0.25;
        const double f = 0.5 * (std::exp(-(r - 2.0) * (r - 2.0) / w2) +
                                std::exp(-(r + 2.0) * (r + 2.0) / w2));
        return f * f * std::pow(r, eta) * r;
    };
    const double exact = adaptive_quadrature(integrand, 0.0, 8.0, 1e-12);
    CHECK(std::abs(norm - std::sqrt(exact)) / std::sqrt(exact) < 1e-6);
}
