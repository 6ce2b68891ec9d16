#include "plap/nehari.hpp"

#include <algorithm>
#include <cmath>

#include "plap/error.hpp"

namespace plap {

namespace {

void require_nonzero(const RadialFn& u) {
    if (u.is_zero()) throw Error(ErrorKind::ZeroFunction, "the zero function has no fiber");
}

void require_in_W(const Moments& m, const ProblemParams& params) {
    if (!(m.grad_p < params.lambda * m.mass_p)) {
        throw Error(ErrorKind::NotInW, "profile is not in W (A >= lambda B)");
    }
}

}  // namespace

bool in_W(const RadialFn& u, const RadialGrid& grid, const ProblemParams& params) {
    require_nonzero(u);
    const Moments m = moments(u, grid, params);
    return m.grad_p < params.lambda * m.mass_p;
}

double nehari_constraint(const Moments& m, const ProblemParams& params) {
    return m.grad_p + params.term.gamma * m.sub - params.lambda * m.mass_p;
}

bool in_V(const RadialFn& u, const RadialGrid& grid, const ProblemParams& params, double tol) {
    require_nonzero(u);
    const Moments m = moments(u, grid, params);
    return std::abs(nehari_constraint(m, params)) <= tol * std::max(1.0, params.lambda * m.mass_p);
}

double fiber_slope(double t, const Moments& m, const ProblemParams& params) {
    if (!(t > 0.0)) throw Error(ErrorKind::InvalidScale, "fiber scale must be positive");
    const auto& g = params.term;
    return std::pow(t, params.p) * (m.grad_p - params.lambda * m.mass_p) +
           g.gamma * std::pow(t, 1.0 - g.alpha) * m.sub;
}

double fiber_energy(double t, const Moments& m, const ProblemParams& params) {
    const auto& g = params.term;
    const double tp = std::pow(t, params.p);
    return tp / params.p * (m.grad_p - params.lambda * m.mass_p) +
           std::pow(t, 1.0 - g.alpha) * g.gamma * m.sub / (1.0 - g.alpha);
}

double project_closed_form(const Moments& m, const ProblemParams& params) {
    require_in_W(m, params);
    const auto& g = params.term;
    const double deficit = params.lambda * m.mass_p - m.grad_p;
    return std::pow(g.gamma * m.sub / deficit, 1.0 / (params.p - 1.0 + g.alpha));
}

double project_bisection(const Moments& m, const ProblemParams& params, double rel_tol) {
    require_in_W(m, params);
    // psi > 0 left of the root, < 0 right of it.
    double lo = 1.0;
    double hi = 1.0;
    while (fiber_slope(lo, m, params) <= 0.0) {
        lo *= 0.5;
        if (lo < 1e-300) throw Error(ErrorKind::NoConvergence, "no sign change of the fiber slope");
    }
    while (fiber_slope(hi, m, params) >= 0.0) {
        hi *= 2.0;
        if (hi > 1e300) throw Error(ErrorKind::NoConvergence, "no sign change of the fiber slope");
    }
    for (int it = 0; it < 400 && hi - lo > rel_tol * lo; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double s = fiber_slope(mid, m, params);
        if (s > 0.0) {
            lo = mid;
        } else if (s < 0.0) {
            hi = mid;
        } else {
            return mid;
        }
    }
    return 0.5 * (lo + hi);
}

NehariResult project(const RadialFn& u, const RadialGrid& grid, const ProblemParams& params) {
    require_nonzero(u);
    const Moments m = moments(u, grid, params);
    NehariResult r;
    r.t = project_closed_form(m, params);
    r.slope_residual = fiber_slope(r.t, m, params) / std::pow(r.t, params.p) /
                       std::max(1.0, params.lambda * m.mass_p);
    return r;
}

}  // namespace plap
