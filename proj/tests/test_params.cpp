#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "radns/params.hpp"

using namespace radns;

namespace {

// closed nested-radical forms of the two critical exponents, used only as
// cross-check constants against the bisection path
double k1_closed() {
    const double s = std::sqrt(44.0 / 27.0);
    return 2.0 + std::cbrt(2.0 + s) + std::cbrt(2.0 - s);
}

double k2_closed() {
    const double s = std::sqrt(83.0 / 432.0);
    return 1.5 + std::cbrt(0.625 + s) + std::cbrt(0.625 - s);
}

std::vector<double> k_grid() {
    std::vector<double> ks{2.01};
    for (double k = 2.1; k <= 50.0 + 1e-9; k += 0.1) ks.push_back(k);
    return ks;
}

}  // namespace

TEST_CASE("critical exponent k1: cubic root, closed form, threshold") {
    const double k1 = critical_k_2d();
    CHECK(std::abs(k1 - 4.38298) < 1e-4);
    CHECK(std::abs(k1 - k1_closed()) < 1e-12);
    const double residual = ((k1 - 6.0) * k1 + 8.0) * k1 - 4.0;
    CHECK(std::abs(residual) < 1e-10);
    CHECK(std::abs(alpha_min_2d() - 0.54369) < 5e-6);
    CHECK(critical_k_2d() == k1);  // idempotent
}

TEST_CASE("critical exponent k2: cubic root, closed form, threshold") {
    const double k2 = critical_k_3d();
    CHECK(std::abs(k2 - 3.0922) < 1e-4);
    CHECK(std::abs(k2 - k2_closed()) < 1e-12);
    const double residual = ((2.0 * k2 - 9.0) * k2 + 10.0) * k2 - 4.0;
    CHECK(std::abs(residual) < 1e-10);
    // exact threshold; its published 5-decimal form 0.67661 is a ceiling of
    // this value (a lower bound stated conservatively), 5.018e-6 above it
    CHECK(std::abs(alpha_min_3d() - 0.676604982099662) < 1e-12);
    CHECK(alpha_min_3d() < 0.67661);
    CHECK(std::abs(alpha_min_3d() - 0.67661) < 1.01e-5);
}

TEST_CASE("weighted 2d threshold") {
    CHECK(std::abs(alpha_min_2d_weighted() - 0.51472) < 5e-6);
    CHECK(alpha_min_2d_weighted() == doctest::Approx(9.0 - 6.0 * std::sqrt(2.0)));
}

TEST_CASE("alpha_lower_2d: values, identity, domain") {
    CHECK(alpha_lower_2d(3.0) == doctest::Approx(9.0 - 6.0 * std::sqrt(2.0)).epsilon(1e-12));
    CHECK(std::abs(alpha_lower_2d(4.0) - 0.535898) < 1e-6);
    CHECK(std::abs(alpha_lower_2d(critical_k_2d()) - alpha_min_2d()) < 1e-9);
    CHECK_THROWS_AS(alpha_lower_2d(2.0), std::domain_error);
    CHECK_THROWS_AS(alpha_lower_2d(1.5), std::domain_error);
}

TEST_CASE("alpha_lower_2d equals k/(k + 2 sqrt(k-1))") {
    for (double k : k_grid()) {
        const double simplified = k / (k + 2.0 * std::sqrt(k - 1.0));
        CHECK(std::abs(alpha_lower_2d(k) - simplified) < 1e-12);
    }
}

TEST_CASE("alpha_lower_3d: values, identity, domain") {
    CHECK(alpha_lower_3d(3.0) == doctest::Approx(7.0 - std::sqrt(40.0)).epsilon(1e-12));
    CHECK(std::abs(alpha_lower_3d(critical_k_3d()) - alpha_min_3d()) < 1e-9);
    const double k = critical_k_3d() + 1.0;
    CHECK(alpha_lower_3d(k) < 1.0 - 1.0 / k);
    CHECK_THROWS_AS(alpha_lower_3d(2.0), std::domain_error);
}

TEST_CASE("both threshold functions are strictly increasing on the k grid") {
    const auto ks = k_grid();
    for (std::size_t i = 1; i < ks.size(); ++i) {
        CHECK(alpha_lower_2d(ks[i]) > alpha_lower_2d(ks[i - 1]));
        CHECK(alpha_lower_3d(ks[i]) > alpha_lower_3d(ks[i - 1]));
    }
}

TEST_CASE("above the critical exponent the threshold undercuts 1 - 2/k resp. 1 - 1/k") {
    for (double k : k_grid()) {
        if (k > critical_k_2d()) CHECK(alpha_lower_2d(k) < 1.0 - 2.0 / k);
        if (k > critical_k_3d()) CHECK(alpha_lower_3d(k) < 1.0 - 1.0 / k);
    }
}

TEST_CASE("momentum_exponent_ok: worked examples") {
    ModelParams p2{.dim = 2, .alpha = 0.6, .gamma = 2.0, .far_density = 1.0};
    CHECK(momentum_exponent_ok(p2, 3.0));  // 9*0.16 = 1.44 < 4*2*0.36 = 2.88

    ModelParams p3{.dim = 3, .alpha = 0.67, .gamma = 1.01, .far_density = 1.0};
    CHECK_FALSE(momentum_exponent_ok(p3, 3.0));

    ModelParams border{.dim = 2, .alpha = alpha_lower_2d(3.0), .gamma = 2.0, .far_density = 1.0};
    CHECK_FALSE(momentum_exponent_ok(border, 3.0));  // strict inequality fails at equality
}

TEST_CASE("momentum_exponent_ok agrees with the sign of alpha minus the threshold") {
    for (double k : std::vector<double>{3.0, 3.5, 4.0, 6.0, 10.0, 25.0}) {
        for (double alpha = 0.52; alpha < 1.0; alpha += 0.03) {
            if (alpha > 0.5) {
                ModelParams p{.dim = 2, .alpha = alpha, .gamma = 2.0, .far_density = 1.0};
                CHECK(momentum_exponent_ok(p, k) == (alpha > alpha_lower_2d(k)));
            }
            if (alpha > 2.0 / 3.0) {
                ModelParams p{.dim = 3, .alpha = alpha, .gamma = 2.0, .far_density = 1.0};
                CHECK(momentum_exponent_ok(p, k) == (alpha > alpha_lower_3d(k)));
            }
        }
    }
}

TEST_CASE("check_admissibility: theorem windows") {
    ModelParams ok2{.dim = 2, .alpha = 0.6, .gamma = 2.0, .far_density = 1.0};
    const auto rep2 = check_admissibility(ok2, TheoremRegime::cauchy_2d);
    CHECK(rep2.admissible);
    CHECK(rep2.violated_conditions.empty());
    CHECK(std::isinf(rep2.gamma_upper));
    CHECK(rep2.alpha_lower == doctest::Approx(alpha_min_2d()));

    ModelParams bad3{.dim = 3, .alpha = 0.7, .gamma = 1.3, .far_density = 1.0};
    const auto rep3 = check_admissibility(bad3, TheoremRegime::cauchy_3d);
    CHECK_FALSE(rep3.admissible);
    REQUIRE(rep3.violated_conditions.size() == 1);
    CHECK(rep3.violated_conditions[0] == "gamma_upper");
    CHECK(rep3.gamma_upper == doctest::Approx(1.2));

    ModelParams w2{.dim = 2, .alpha = 0.52, .gamma = 3.0, .far_density = 1.0};
    CHECK(check_admissibility(w2, TheoremRegime::cauchy_2d_weighted, 0.5).admissible);
    // same alpha misses the unweighted window
    CHECK_FALSE(check_admissibility(w2, TheoremRegime::cauchy_2d).admissible);
}

TEST_CASE("check_admissibility: boundary gamma = 6 alpha - 3 is excluded (open interval)") {
    ModelParams p{.dim = 3, .alpha = 0.8, .gamma = 6.0 * 0.8 - 3.0, .far_density = 1.0};
    const auto rep = check_admissibility(p, TheoremRegime::ball_3d);
    CHECK_FALSE(rep.admissible);
    CHECK(rep.violated_conditions == std::vector<std::string>{"gamma_upper"});
}

TEST_CASE("check_admissibility: eta handling and usage errors") {
    ModelParams p{.dim = 2, .alpha = 0.6, .gamma = 2.0, .far_density = 1.0};
    const auto bad_eta = check_admissibility(p, TheoremRegime::cauchy_2d_weighted, 0.2);
    CHECK_FALSE(bad_eta.admissible);
    CHECK(bad_eta.violated_conditions == std::vector<std::string>{"eta_range"});

    CHECK_THROWS_AS(check_admissibility(p, TheoremRegime::cauchy_3d), std::invalid_argument);
    ModelParams p3{.dim = 3, .alpha = 0.7, .gamma = 1.1, .far_density = 1.0};
    CHECK_THROWS_AS(check_admissibility(p3, TheoremRegime::cauchy_2d), std::invalid_argument);
    CHECK_THROWS_AS(check_admissibility(p3, TheoremRegime::ball_3d, 0.5), std::invalid_argument);
}

TEST_CASE("check_admissibility: non-unit pressure coefficient is flagged") {
    ModelParams p{.dim = 3, .alpha = 0.7, .gamma = 1.1, .pressure_coeff = 2.0,
                  .far_density = 1.0};
    const auto rep = check_admissibility(p, TheoremRegime::cauchy_3d);
    CHECK(rep.admissible);
    REQUIRE(rep.notes.size() == 1);
}

TEST_CASE("ModelParams validation") {
    ModelParams p{.dim = 3, .alpha = 0.7, .gamma = 1.1, .far_density = 1.0};
    CHECK_NOTHROW(validate(p));
    auto q = p;
    q.dim = 4;
    CHECK_THROWS_AS(validate(q), std::invalid_argument);
    q = p;
    q.alpha = 1.2;
    CHECK_THROWS_AS(validate(q), std::invalid_argument);
    q.alpha = 1.0;  // constant shear / zero bulk boundary case is constructible
    CHECK_NOTHROW(validate(q));
    const auto rep = check_admissibility(q, TheoremRegime::cauchy_3d);
    CHECK_FALSE(rep.admissible);  // the theorems still need alpha < 1 strictly
    q = p;
    q.gamma = 1.0;
    CHECK_THROWS_AS(validate(q), std::invalid_argument);
    q = p;
    q.far_density = -1.0;
    CHECK_THROWS_AS(validate(q), std::invalid_argument);
    // alpha below (N-1)/N violates mu + N lambda >= 0
    q = p;
    q.dim = 3;
    q.alpha = 0.6;
    CHECK_THROWS_AS(validate(q), std::invalid_argument);
    q.dim = 2;
    CHECK_NOTHROW(validate(q));
}
