#pragma once

/// @file params.hpp
/// @brief Physical/constitutive constants and the admissibility windows of the
///        degenerate-viscosity barotropic model.
///
/// The model is P = a rho^gamma with shear viscosity mu = rho^alpha and bulk
/// viscosity lambda = (alpha-1) rho^alpha.  Global classical solutions are
/// known only inside (alpha, gamma) windows whose exact lower ends are roots
/// of two cubics; this header exposes those thresholds and a validator that
/// turns a parameter tuple into an AdmissibilityReport.

#include <optional>
#include <string>
#include <vector>

#include "radns/types.hpp"

namespace radns {

struct ModelParams {
    int dim = 3;              ///< spatial dimension N, 2 or 3
    double alpha = 0.7;       ///< viscosity exponent, mu = rho^alpha
    double gamma = 1.1;       ///< adiabatic exponent, P = a rho^gamma
    double pressure_coeff = 1.0;  ///< a; a = 0 disables pressure (debug runs)
    std::optional<double> far_density;  ///< rho_far; reference density for K in the ball case

    double far_density_or_throw() const;
};

/// Throws std::invalid_argument when the tuple violates the model constraints
/// (dim in {2,3}, alpha in (0,1), gamma > 1, a >= 0, rho_far > 0 if present,
/// and the physical constraint mu + N*lambda >= 0, i.e. alpha >= (N-1)/N).
void validate(const ModelParams& p);

struct AdmissibilityReport {
    bool admissible = false;
    TheoremRegime regime = TheoremRegime::cauchy_3d;
    double alpha_lower = 0.0;
    double alpha_upper = 1.0;
    double gamma_lower = 1.0;
    double gamma_upper = 0.0;  // +infinity in the 2d regimes
    std::vector<std::string> violated_conditions;
    std::vector<std::string> notes;
};

/// Unique root in (2, inf) of k^3 - 6 k^2 + 8 k - 4 = 0 (bracketed in [4,5]).
/// Its reciprocal gives the 2d threshold alpha > 1 - 2/k.
double critical_k_2d();

/// Unique root in (2, inf) of 2 k^3 - 9 k^2 + 10 k - 4 = 0 (bracketed in [3,4]).
/// Its reciprocal gives the 3d threshold alpha > 1 - 1/k.
double critical_k_3d();

/// Smallest alpha for which the k-th moment estimate closes in 2d:
/// 1 - (2 k sqrt(k-1) - 4 k + 4) / (k-2)^2.  Strictly increasing on (2, inf)
/// with range (1/2, 1).  Throws std::domain_error for k <= 2.
double alpha_lower_2d(double k);

/// 3d counterpart: 1 - (sqrt(2k^3 - k^2 - 2k + 1) - 3k + 3) / (k-2)^2.
/// Strictly increasing on (2, inf) with range (2/3, 1).
double alpha_lower_3d(double k);

/// Theorem thresholds: 1 - 2/k1, 9 - 6 sqrt(2), 1 - 1/k2.
double alpha_min_2d();
double alpha_min_2d_weighted();
double alpha_min_3d();

/// Strict moment-closure inequality for exponent k >= 3:
///   N=2:  k^2 (1-alpha)^2 < 4 (k-1) alpha^2
///   N=3:  k^2 (1-alpha)^2 < (4 alpha - 2)(k-1) alpha
bool momentum_exponent_ok(const ModelParams& params, double k);

/// Verdict for the given theorem regime.  eta is required (and only allowed)
/// for cauchy_2d_weighted; out-of-range eta is reported as a violated
/// condition, not an exception.  A regime inconsistent with params.dim is a
/// usage error (std::invalid_argument).
AdmissibilityReport check_admissibility(const ModelParams& params,
                                        TheoremRegime regime,
                                        std::optional<double> eta = std::nullopt);

}  // namespace radns
