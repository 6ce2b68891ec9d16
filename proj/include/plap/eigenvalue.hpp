#pragma once

#include "plap/radial.hpp"

namespace plap {

struct EigenOptions {
    double tol = 1e-10;  ///< relative stagnation of the Rayleigh quotient
    int max_iter = 20000;
};

struct EigenResult {
    double lambda1 = 0.0;
    RadialFn eigfn;         ///< normalized to B = 1, positive in the interior
    double residual = 0.0;  ///< weighted sup-norm of (grad A - lambda1 grad B) / p
    int iterations = 0;
};

/// First Dirichlet eigenvalue of -Delta_p on the grid's ball, in the radial
/// class, by minimizing A/B.
///
/// Each step moves along the Rayleigh-quotient gradient preconditioned by the
/// p-stiffness frozen at the current iterate, takes |.|, renormalizes B = 1
/// and backtracks until the quotient decreases. For p = 2 a unit step is one
/// inverse-iteration sweep. Starts from 1 - (r/R)^2. Throws InvalidParams for
/// p <= 1 and NoConvergence after max_iter.
EigenResult lambda1(const RadialGrid& grid, double p, const EigenOptions& opts = {});

}  // namespace plap
