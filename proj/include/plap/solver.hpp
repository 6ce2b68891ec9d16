#pragma once

#include <string>
#include <vector>

#include "plap/problem.hpp"
#include "plap/radial.hpp"

namespace plap {

struct SolveOptions {
    double tol = 1e-8;
    int max_iter = 50000;
    double step0 = 1.0;
    /// Switch to projected Newton steps once the stationarity residual is
    /// below this value. Set to 0 to run the preconditioned descent alone.
    double newton_switch = 1e-1;
};

struct Solution {
    RadialFn u;  ///< Nehari-projected minimizer, non-negative
    double energy = 0.0;
    double nehari_residual = 0.0;        ///< |A + gamma C - lambda B| / max(1, lambda B)
    double stationarity_residual = 0.0;  ///< weighted sup-norm of the energy gradient
    double positivity_margin = 0.0;      ///< minimum over interior nodes
    double lambda1 = 0.0;                ///< first eigenvalue on the same grid
    int iterations = 0;
    bool converged = false;
    std::vector<double> energy_trace;  ///< energy after every accepted step
    std::vector<std::string> warnings;
};

/// Rescales the radial first eigenfunction so that A = 1 and checks it lies in
/// W; falls back to cos(pi r / 2R). Throws OutsideWindow when lambda does not
/// exceed the eigenfunction's Rayleigh quotient.
RadialFn initial_guess(const RadialGrid& grid, const ProblemParams& params, const RadialFn& eig);

/// Minimizes the energy over the Nehari set by projected descent:
/// v <- |v - eta P^{-1} grad F(v)|, re-project onto the Nehari set, backtrack eta
/// until the energy decreases (Armijo, factor 0.5, constant 1e-4). Once close,
/// projected Newton steps finish the job. Throws InvalidParams (including
/// gamma = 0) or OutsideWindow; returns the best iterate with converged = false
/// when max_iter is exhausted.
Solution solve(const RadialGrid& grid, const ProblemParams& params, const SolveOptions& opts = {});

/// Like solve, but reuses an already computed first eigenpair.
Solution solve(const RadialGrid& grid, const ProblemParams& params, const RadialFn& eigfn, double lambda1,
               const SolveOptions& opts = {});

/// Fills energy, residuals and positivity margin for u.
Solution evaluate(const RadialFn& u, const RadialGrid& grid, const ProblemParams& params);

struct ValidationReport {
    bool positive = false;          ///< min interior u > 0
    bool no_zero_annulus = false;   ///< no node vanishes between positive values
    bool fibering_max = false;      ///< F(u) >= F(s u) on sampled s
    bool on_nehari = false;         ///< in V at tolerance
    bool stationary = false;        ///< weighted gradient below tolerance
    double fiber_gap = 0.0;         ///< min over samples of F(u) - F(s u)
    bool valid() const { return positive && no_zero_annulus && fibering_max && on_nehari && stationary; }
};

/// Post-checks on a computed profile; never throws for a well-formed profile.
ValidationReport validate(const Solution& sol, const RadialGrid& grid, const ProblemParams& params,
                          double tol = 1e-8, int fiber_samples = 50);

}  // namespace plap
