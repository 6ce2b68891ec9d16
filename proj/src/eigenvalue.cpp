#include "plap/eigenvalue.hpp"

#include <cmath>
#include <vector>

#include "plap/error.hpp"

namespace plap {

namespace {

ProblemParams linear_params(const RadialGrid& grid, double p, double lambda) {
    ProblemParams params;
    params.dim = grid.dim();
    params.p = p;
    params.lambda = lambda;
    params.radius = grid.radius();
    params.term = {0.0, 0.5};
    return params;
}

RadialFn normalized(const RadialFn& u, const RadialGrid& grid, double p) {
    const Moments m = moments(u, grid, linear_params(grid, p, 0.0));
    return u.scaled(std::pow(m.mass_p, -1.0 / p));
}

double quotient(const RadialFn& u, const RadialGrid& grid, double p) {
    const Moments m = moments(u, grid, linear_params(grid, p, 0.0));
    return m.grad_p / m.mass_p;
}

}  // namespace

EigenResult lambda1(const RadialGrid& grid, double p, const EigenOptions& opts) {
    if (!(p > 1.0)) throw Error(ErrorKind::InvalidParams, "p must exceed 1");

    const double radius = grid.radius();
    RadialFn u = normalized(RadialFn::sample(grid, [radius](double r) { return 1.0 - (r / radius) * (r / radius); }),
                            grid, p);
    double q = quotient(u, grid, p);

    const std::size_t n = grid.cells();
    int quiet = 0;
    for (int it = 1; it <= opts.max_iter; ++it) {
        // (grad A - q grad B) / p; with B = 1 this is grad Q / p.
        const RadialFn g = energy_gradient(u, grid, linear_params(grid, p, q));
        std::vector<double> dir(g.values().begin(), g.values().begin() + static_cast<std::ptrdiff_t>(n));
        solve_tridiagonal(frozen_stiffness(u, grid, p), dir);
        double decrease = 0.0;
        for (std::size_t i = 0; i < n; ++i) decrease += g[i] * dir[i];

        double eta = 1.0;
        bool accepted = false;
        RadialFn trial;
        double q_trial = q;
        while (eta > 1e-14) {
            std::vector<double> v(grid.size(), 0.0);
            for (std::size_t i = 0; i < n; ++i) v[i] = std::abs(u[i] - eta * dir[i]);
            trial = RadialFn(std::move(v));
            if (!trial.is_zero()) {
                trial = normalized(trial, grid, p);
                q_trial = quotient(trial, grid, p);
                if (q_trial <= q - 1e-4 * eta * p * decrease) {
                    accepted = true;
                    break;
                }
            }
            eta *= 0.5;
        }

        const double change = accepted ? (q - q_trial) : 0.0;
        if (accepted) {
            u = std::move(trial);
            q = q_trial;
        }
        quiet = (change <= opts.tol * q) ? quiet + 1 : 0;
        if (!accepted || quiet >= 2) {
            EigenResult res;
            res.lambda1 = q;
            res.residual = weighted_sup_norm(energy_gradient(u, grid, linear_params(grid, p, q)), grid);
            res.eigfn = std::move(u);
            res.iterations = it;
            return res;
        }
    }
    throw Error(ErrorKind::NoConvergence, "Rayleigh descent did not stagnate within max_iter");
}

}  // namespace plap
