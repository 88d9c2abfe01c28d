#pragma once

#include <Eigen/Dense>

namespace radns {

/// Cell-centered scalar field on a radial grid.
using Field = Eigen::ArrayXd;

/// Dynamical boundary treatment of a run.
enum class Regime {
    cauchy,  ///< truncated whole-space problem, far-field Dirichlet (rho_far, 0)
    ball     ///< bounded ball, no-slip wall u = 0
};

/// Parameter windows of the global-existence theorems.
enum class TheoremRegime {
    cauchy_2d,
    cauchy_2d_weighted,
    cauchy_3d,
    ball_3d
};

const char* to_string(Regime r);
const char* to_string(TheoremRegime r);

}  // namespace radns
