#include "plap/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "plap/analysis.hpp"
#include "plap/eigenvalue.hpp"
#include "plap/error.hpp"
#include "plap/nehari.hpp"

namespace plap {

namespace {

double nehari_residual(const Moments& m, const ProblemParams& params) {
    return std::abs(nehari_constraint(m, params)) / std::max(1.0, params.lambda * m.mass_p);
}

bool in_W_moments(const Moments& m, const ProblemParams& params) { return m.grad_p < params.lambda * m.mass_p; }

// Projects onto the Nehari set; empty profile when v is not in W.
RadialFn try_project(const RadialFn& v, const RadialGrid& grid, const ProblemParams& params) {
    if (v.is_zero()) return {};
    const Moments m = moments(v, grid, params);
    if (!in_W_moments(m, params)) return {};
    return v.scaled(project_closed_form(m, params));
}

double stationarity(const RadialFn& u, const RadialGrid& grid, const ProblemParams& params) {
    if (u.interior_min() < kPositivityFloor) return std::numeric_limits<double>::infinity();
    return weighted_sup_norm(energy_gradient(u, grid, params), grid);
}

std::vector<std::string> hypothesis_warnings(const ProblemParams& params, double lambda1) {
    std::vector<std::string> out;
    if (params.p < 2.0) out.emplace_back("p below 2: outside the existence hypotheses");
    const auto& g = params.term;
    if (check_constants(params.p, g.alpha, g.m1(), g.m2())) {
        const ExistenceWindow w = existence_window(params.dim, params.p, g.alpha, g.m1(), g.m2(), lambda1);
        if (!w.contains(params.lambda)) out.emplace_back("lambda outside existence window");
    } else {
        out.emplace_back("constants outside the existence hypotheses");
    }
    return out;
}

}  // namespace

RadialFn initial_guess(const RadialGrid& grid, const ProblemParams& params, const RadialFn& eig) {
    if (eig.is_zero()) throw Error(ErrorKind::ZeroFunction, "eigenfunction is zero");
    const RadialFn e = eig.abs();
    const Moments m = moments(e, grid, params);
    const double quotient = m.grad_p / m.mass_p;
    if (!(params.lambda > quotient)) {
        throw Error(ErrorKind::OutsideWindow, "lambda does not exceed the first eigenvalue on this grid");
    }
    RadialFn guess = e.scaled(std::pow(m.grad_p, -1.0 / params.p));
    if (in_W(guess, grid, params)) return guess;

    const double radius = grid.radius();
    RadialFn fallback = RadialFn::sample(grid, [radius](double r) { return std::cos(std::numbers::pi * r / (2.0 * radius)); });
    if (in_W(fallback, grid, params)) return fallback;
    throw Error(ErrorKind::OutsideWindow, "W is empty at the discrete level");
}

Solution evaluate(const RadialFn& u, const RadialGrid& grid, const ProblemParams& params) {
    Solution s;
    const Moments m = moments(u, grid, params);
    s.u = u;
    s.energy = energy(m, params);
    s.nehari_residual = nehari_residual(m, params);
    s.stationarity_residual = stationarity(u, grid, params);
    s.positivity_margin = u.interior_min();
    return s;
}

Solution solve(const RadialGrid& grid, const ProblemParams& params, const SolveOptions& opts) {
    check_params(params);
    const EigenResult eig = lambda1(grid, params.p);
    return solve(grid, params, eig.eigfn, eig.lambda1, opts);
}

Solution solve(const RadialGrid& grid, const ProblemParams& params, const RadialFn& eigfn, double lambda1,
               const SolveOptions& opts) {
    check_params(params);
    if (grid.dim() != params.dim || std::abs(grid.radius() - params.radius) > 1e-14 * params.radius) {
        throw Error(ErrorKind::InvalidParams, "grid does not match the problem's dimension and radius");
    }
    if (!(params.lambda > lambda1)) {
        throw Error(ErrorKind::OutsideWindow, "lambda does not exceed the first eigenvalue on this grid");
    }

    const std::size_t n = grid.cells();
    RadialFn v = try_project(initial_guess(grid, params, eigfn), grid, params);
    double f = energy(v, grid, params);

    Solution best;
    best.energy_trace.push_back(f);
    double eta_last = opts.step0;
    int it = 0;
    bool converged = false;
    double res = stationarity(v, grid, params);

    for (; it < opts.max_iter; ++it) {
        const double neh = nehari_residual(moments(v, grid, params), params);
        if (res <= opts.tol && neh <= opts.tol) {
            converged = true;
            break;
        }
        const RadialFn g = energy_gradient(v, grid, params);

        bool accepted = false;
        if (res < opts.newton_switch) {
            std::vector<double> step(g.values().begin(), g.values().begin() + static_cast<std::ptrdiff_t>(n));
            try {
                solve_tridiagonal(energy_hessian(v, grid, params), step);
                // Damp so every interior node keeps at least a tenth of its value.
                double s = 1.0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (step[i] > 0.0) s = std::min(s, 0.9 * v[i] / step[i]);
                }
                for (; s > 1e-6 && !accepted; s *= 0.5) {
                    std::vector<double> w(grid.size(), 0.0);
                    for (std::size_t i = 0; i < n; ++i) w[i] = v[i] - s * step[i];
                    RadialFn trial = try_project(RadialFn(std::move(w)), grid, params);
                    if (trial.size() == 0) continue;
                    const double f_trial = energy(trial, grid, params);
                    const double r_trial = stationarity(trial, grid, params);
                    // Newton targets the residual; the energy may only move by rounding.
                    if (r_trial < res && f_trial <= f + 1e-12 * std::max(1.0, std::abs(f))) {
                        v = std::move(trial);
                        f = f_trial;
                        res = r_trial;
                        accepted = true;
                    }
                }
            } catch (const Error&) {
                accepted = false;
            }
        }

        if (!accepted) {
            std::vector<double> dir(g.values().begin(), g.values().begin() + static_cast<std::ptrdiff_t>(n));
            solve_tridiagonal(frozen_stiffness(v, grid, params.p), dir);
            double slope = 0.0;
            for (std::size_t i = 0; i < n; ++i) slope += g[i] * dir[i];

            double eta = std::min(opts.step0, 2.0 * eta_last);
            for (; eta > 1e-16; eta *= 0.5) {
                std::vector<double> w(grid.size(), 0.0);
                for (std::size_t i = 0; i < n; ++i) w[i] = std::abs(v[i] - eta * dir[i]);
                RadialFn trial = try_project(RadialFn(std::move(w)), grid, params);
                if (trial.size() == 0) continue;  // left W: shorter step
                if (trial.interior_min() < kPositivityFloor) continue;
                const double f_trial = energy(trial, grid, params);
                if (f_trial <= f - 1e-4 * eta * slope) {
                    v = std::move(trial);
                    f = f_trial;
                    res = stationarity(v, grid, params);
                    eta_last = eta;
                    accepted = true;
                    break;
                }
            }
        }
        if (!accepted) break;  // no admissible step decreases the energy
        best.energy_trace.push_back(f);
    }

    Solution out = evaluate(v, grid, params);
    out.energy_trace = std::move(best.energy_trace);
    out.iterations = it;
    out.lambda1 = lambda1;
    out.converged = converged || (out.stationarity_residual <= opts.tol && out.nehari_residual <= opts.tol);
    out.warnings = hypothesis_warnings(params, lambda1);
    return out;
}

ValidationReport validate(const Solution& sol, const RadialGrid& grid, const ProblemParams& params, double tol,
                          int fiber_samples) {
    ValidationReport rep;
    const RadialFn& u = sol.u;
    rep.positive = u.interior_min() > 0.0;

    rep.no_zero_annulus = true;
    const std::size_t last = u.size() - 1;
    for (std::size_t i = 1; i < last && rep.no_zero_annulus; ++i) {
        if (u[i] > 0.0) continue;
        bool left = false;
        bool right = false;
        for (std::size_t j = 0; j < i; ++j) left = left || u[j] > 0.0;
        for (std::size_t j = i + 1; j < last; ++j) right = right || u[j] > 0.0;
        if (left && right) rep.no_zero_annulus = false;
    }

    if (u.is_zero()) return rep;
    const Moments m = moments(u, grid, params);
    const double f1 = fiber_energy(1.0, m, params);
    rep.fiber_gap = std::numeric_limits<double>::infinity();
    for (int k = 0; k < fiber_samples; ++k) {
        const double e = -2.0 + 4.0 * k / std::max(1, fiber_samples - 1);
        rep.fiber_gap = std::min(rep.fiber_gap, f1 - fiber_energy(std::pow(10.0, e), m, params));
    }
    rep.fibering_max = rep.fiber_gap >= -1e-14 * std::max(1.0, std::abs(f1));
    rep.on_nehari = in_V(u, grid, params, tol);
    rep.stationary = rep.positive && stationarity(u, grid, params) <= tol;
    return rep;
}

}  // namespace plap
