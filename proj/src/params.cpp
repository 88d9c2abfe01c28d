#include "radns/params.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace radns {

const char* to_string(Regime r) {
    switch (r) {
        case Regime::cauchy: return "cauchy";
        case Regime::ball: return "ball";
    }
    return "?";
}

const char* to_string(TheoremRegime r) {
    switch (r) {
        case TheoremRegime::cauchy_2d: return "cauchy-2d";
        case TheoremRegime::cauchy_2d_weighted: return "cauchy-2d-weighted";
        case TheoremRegime::cauchy_3d: return "cauchy-3d";
        case TheoremRegime::ball_3d: return "ball-3d";
    }
    return "?";
}

double ModelParams::far_density_or_throw() const {
    if (!far_density)
        throw std::invalid_argument("far_density required for this operation");
    return *far_density;
}

void validate(const ModelParams& p) {
    if (p.dim != 2 && p.dim != 3)
        throw std::invalid_argument("dim must be 2 or 3");
    if (!(p.alpha > 0.0 && p.alpha <= 1.0))
        throw std::invalid_argument("alpha must lie in (0,1]");
    if (!(p.gamma > 1.0))
        throw std::invalid_argument("gamma must exceed 1");
    if (!(p.pressure_coeff >= 0.0))
        throw std::invalid_argument("pressure_coeff must be nonnegative");
    if (p.far_density && !(*p.far_density > 0.0))
        throw std::invalid_argument("far_density must be positive");
    // mu + N*lambda = (1 + N(alpha-1)) rho^alpha >= 0
    if (1.0 + p.dim * (p.alpha - 1.0) < 0.0)
        throw std::invalid_argument("viscosity constraint violated: alpha < (N-1)/N");
}

namespace {

// Bracketed bisection to ~1e-13 followed by two Newton polish steps.
double cubic_root(const std::function<double(double)>& f,
                  const std::function<double(double)>& df,
                  double lo, double hi) {
    double flo = f(lo);
    if (flo == 0.0) return lo;
    if (flo * f(hi) > 0.0)
        throw std::logic_error("cubic_root: endpoints do not bracket");
    while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if (flo * fm < 0.0) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    double x = 0.5 * (lo + hi);
    for (int i = 0; i < 2; ++i) x -= f(x) / df(x);
    return x;
}

}  // namespace

double critical_k_2d() {
    static const double k = cubic_root(
        [](double x) { return ((x - 6.0) * x + 8.0) * x - 4.0; },
        [](double x) { return (3.0 * x - 12.0) * x + 8.0; }, 4.0, 5.0);
    return k;
}

double critical_k_3d() {
    static const double k = cubic_root(
        [](double x) { return ((2.0 * x - 9.0) * x + 10.0) * x - 4.0; },
        [](double x) { return (6.0 * x - 18.0) * x + 10.0; }, 3.0, 4.0);
    return k;
}

double alpha_lower_2d(double k) {
    if (!(k > 2.0)) throw std::domain_error("alpha_lower_2d requires k > 2");
    // numerator 2k sqrt(k-1) - 4k + 4 rewritten as 2 s (s-1)^2 with s = sqrt(k-1),
    // which avoids the cancellation near k = 2
    const double s = std::sqrt(k - 1.0);
    const double d = k - 2.0;
    return 1.0 - 2.0 * s * (s - 1.0) * (s - 1.0) / (d * d);
}

double alpha_lower_3d(double k) {
    if (!(k > 2.0)) throw std::domain_error("alpha_lower_3d requires k > 2");
    // sqrt(2k^3-k^2-2k+1) - 3k + 3 = 2 (k-1)(k-2)^2 / (sqrt(...) + 3(k-1))
    const double root = std::sqrt(((2.0 * k - 1.0) * k - 2.0) * k + 1.0);
    return 1.0 - 2.0 * (k - 1.0) / (root + 3.0 * (k - 1.0));
}

double alpha_min_2d() { return 1.0 - 2.0 / critical_k_2d(); }
double alpha_min_2d_weighted() { return 9.0 - 6.0 * std::sqrt(2.0); }
double alpha_min_3d() { return 1.0 - 1.0 / critical_k_3d(); }

bool momentum_exponent_ok(const ModelParams& params, double k) {
    const double a = params.alpha;
    const double lhs = k * k * (1.0 - a) * (1.0 - a);
    if (params.dim == 2) return lhs < 4.0 * (k - 1.0) * a * a;
    return lhs < (4.0 * a - 2.0) * (k - 1.0) * a;
}

AdmissibilityReport check_admissibility(const ModelParams& params,
                                        TheoremRegime regime,
                                        std::optional<double> eta) {
    validate(params);

    const int want_dim =
        (regime == TheoremRegime::cauchy_2d || regime == TheoremRegime::cauchy_2d_weighted) ? 2 : 3;
    if (params.dim != want_dim)
        throw std::invalid_argument("admissibility regime inconsistent with dim");
    if (eta && regime != TheoremRegime::cauchy_2d_weighted)
        throw std::invalid_argument("eta only applies to the weighted 2d regime");

    AdmissibilityReport rep;
    rep.regime = regime;
    switch (regime) {
        case TheoremRegime::cauchy_2d:
            rep.alpha_lower = alpha_min_2d();
            rep.gamma_upper = std::numeric_limits<double>::infinity();
            break;
        case TheoremRegime::cauchy_2d_weighted:
            rep.alpha_lower = alpha_min_2d_weighted();
            rep.gamma_upper = std::numeric_limits<double>::infinity();
            if (!eta) {
                rep.violated_conditions.push_back("eta_missing");
            } else if (!(*eta >= 1.0 / 3.0 && *eta <= 1.0)) {
                rep.violated_conditions.push_back("eta_range");
            }
            break;
        case TheoremRegime::cauchy_3d:
        case TheoremRegime::ball_3d:
            rep.alpha_lower = alpha_min_3d();
            rep.gamma_upper = 6.0 * params.alpha - 3.0;
            break;
    }

    // All theorem inequalities are strict; equality is not admissible.
    if (!(params.alpha > rep.alpha_lower)) rep.violated_conditions.push_back("alpha_lower");
    if (!(params.alpha < rep.alpha_upper)) rep.violated_conditions.push_back("alpha_upper");
    if (!(params.gamma > rep.gamma_lower)) rep.violated_conditions.push_back("gamma_lower");
    if (!(params.gamma < rep.gamma_upper)) rep.violated_conditions.push_back("gamma_upper");

    if (params.pressure_coeff != 1.0)
        rep.notes.push_back("thresholds stated for pressure_coeff = 1");

    rep.admissible = rep.violated_conditions.empty();
    return rep;
}

}  // namespace radns
