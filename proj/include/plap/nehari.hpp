#pragma once

#include "plap/problem.hpp"
#include "plap/radial.hpp"

namespace plap {

/// Scale t > 0 that moves a profile u onto the Nehari set, i.e. the unique
/// critical point (a maximum) of s -> F(s u).
struct NehariResult {
    double t = 0.0;
    double slope_residual = 0.0;  ///< psi(t) / t^p, normalized to be scale-free
};

/// A < lambda B. Throws ZeroFunction for u == 0.
bool in_W(const RadialFn& u, const RadialGrid& grid, const ProblemParams& params);

/// |A + gamma C - lambda B| <= tol * max(1, lambda B). Throws ZeroFunction for u == 0.
bool in_V(const RadialFn& u, const RadialGrid& grid, const ProblemParams& params, double tol);

/// Signed Nehari constraint A + gamma C - lambda B (zero exactly on V).
double nehari_constraint(const Moments& m, const ProblemParams& params);

/// psi(t) = t^p (A - lambda B) + gamma t^(1-alpha) C, the derivative of the
/// fibering map times t. Throws InvalidScale for t <= 0.
double fiber_slope(double t, const Moments& m, const ProblemParams& params);

/// F(t u) from the moments of u.
double fiber_energy(double t, const Moments& m, const ProblemParams& params);

/// Closed-form root of psi for the power nonlinearity. Throws NotInW unless A < lambda B.
double project_closed_form(const Moments& m, const ProblemParams& params);

/// Root of psi by bracketing bisection, relative tolerance rel_tol on t.
/// Independent of the closed form. Throws NotInW unless A < lambda B.
double project_bisection(const Moments& m, const ProblemParams& params, double rel_tol = 1e-12);

/// Nehari projection of a non-negative, non-zero profile in W.
/// Throws ZeroFunction or NotInW.
NehariResult project(const RadialFn& u, const RadialGrid& grid, const ProblemParams& params);

}  // namespace plap
