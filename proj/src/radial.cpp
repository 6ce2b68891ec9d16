#include "plap/radial.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "plap/error.hpp"

namespace plap {

namespace {

double signed_pow(double x, double e) { return std::copysign(std::pow(std::abs(x), e), x); }

std::size_t interior_count(const RadialGrid& grid) { return grid.cells(); }

void require_match(const RadialFn& u, const RadialGrid& grid) {
    if (u.size() != grid.size()) {
        throw Error(ErrorKind::InvalidParams, "profile size does not match grid");
    }
}

}  // namespace

RadialGrid build_grid(double radius, int dim, std::size_t cells) {
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw Error(ErrorKind::InvalidGrid, "grid radius must be positive");
    }
    if (dim < 2) throw Error(ErrorKind::InvalidGrid, "grid dimension must be at least 2");
    if (cells < 4) throw Error(ErrorKind::InvalidGrid, "grid needs at least 4 cells");

    RadialGrid g;
    g.radius_ = radius;
    g.dim_ = dim;
    g.spacing_ = radius / static_cast<double>(cells);
    g.sphere_ = sphere_area(dim);
    const double h = g.spacing_;
    const double e = static_cast<double>(dim - 1);

    g.nodes_.resize(cells + 1);
    g.weights_.resize(cells + 1);
    g.node_scales_.resize(cells + 1);
    g.cell_weights_.resize(cells);
    for (std::size_t i = 0; i <= cells; ++i) {
        const double r = (i == cells) ? radius : h * static_cast<double>(i);
        g.nodes_[i] = r;
        const double end = (i == 0 || i == cells) ? 0.5 : 1.0;
        g.weights_[i] = g.sphere_ * end * h * std::pow(r, e);
        g.node_scales_[i] = g.sphere_ * h * std::pow(std::max(r, 0.5 * h), e);
    }
    for (std::size_t i = 0; i < cells; ++i) {
        const double mid = h * (static_cast<double>(i) + 0.5);
        g.cell_weights_[i] = g.sphere_ * h * std::pow(mid, e);
    }
    return g;
}

double RadialGrid::ball_volume() const {
    return sphere_ * std::pow(radius_, dim_) / static_cast<double>(dim_);
}

RadialFn::RadialFn(std::vector<double> values) : values_(std::move(values)) {
    if (!values_.empty()) values_.back() = 0.0;
}

RadialFn RadialFn::sample(const RadialGrid& grid, const std::function<double(double)>& f) {
    std::vector<double> v(grid.size());
    const auto r = grid.nodes();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(r[i]);
    return RadialFn(std::move(v));
}

RadialFn RadialFn::zero(const RadialGrid& grid) { return RadialFn(std::vector<double>(grid.size(), 0.0)); }

void RadialFn::set(std::size_t i, double v) {
    if (i + 1 >= values_.size()) {
        throw Error(ErrorKind::InvalidParams, "the boundary value of a radial profile is fixed at 0");
    }
    values_[i] = v;
}

RadialFn RadialFn::scaled(double s) const {
    std::vector<double> v(values_);
    for (double& x : v) x *= s;
    return RadialFn(std::move(v));
}

RadialFn RadialFn::abs() const {
    std::vector<double> v(values_);
    for (double& x : v) x = std::abs(x);
    return RadialFn(std::move(v));
}

bool RadialFn::is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](double x) { return x == 0.0; });
}

double RadialFn::interior_min() const {
    if (values_.size() < 2) return 0.0;
    return *std::min_element(values_.begin(), values_.end() - 1);
}

Moments moments(const RadialFn& u, const RadialGrid& grid, const ProblemParams& params) {
    require_match(u, grid);
    const double p = params.p;
    const double q = 1.0 - params.term.alpha;
    const double h = grid.spacing();
    const auto cw = grid.cell_weights();
    const auto w = grid.weights();
    const auto v = u.values();

    Moments m;
    for (std::size_t i = 0; i < grid.cells(); ++i) {
        const double d = (v[i + 1] - v[i]) / h;
        m.grad_p += cw[i] * std::pow(std::abs(d), p);
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double a = std::abs(v[i]);
        if (a == 0.0) continue;
        m.mass_p += w[i] * std::pow(a, p);
        m.sub += w[i] * std::pow(a, q);
    }
    return m;
}

double energy(const Moments& m, const ProblemParams& params) {
    const double p = params.p;
    const auto& g = params.term;
    return m.grad_p / p - params.lambda * m.mass_p / p + g.gamma * m.sub / (1.0 - g.alpha);
}

double energy(const RadialFn& u, const RadialGrid& grid, const ProblemParams& params) {
    return energy(moments(u, grid, params), params);
}

RadialFn energy_gradient(const RadialFn& u, const RadialGrid& grid, const ProblemParams& params) {
    require_match(u, grid);
    const std::size_t n = interior_count(grid);
    const double p = params.p;
    const double h = grid.spacing();
    const auto cw = grid.cell_weights();
    const auto w = grid.weights();
    const auto v = u.values();
    const auto& g = params.term;

    if (g.gamma > 0.0) {
        for (std::size_t i = 0; i < n; ++i) {
            if (!(v[i] >= kPositivityFloor)) {
                throw Error(ErrorKind::SingularGradient,
                            "interior node " + std::to_string(i) + " is below the positivity floor");
            }
        }
    }

    std::vector<double> grad(grid.size(), 0.0);
    for (std::size_t i = 0; i < grid.cells(); ++i) {
        const double d = (v[i + 1] - v[i]) / h;
        const double flux = cw[i] * signed_pow(d, p - 1.0) / h;
        grad[i] -= flux;
        grad[i + 1] += flux;
    }
    for (std::size_t i = 0; i < n; ++i) {
        grad[i] -= params.lambda * w[i] * signed_pow(v[i], p - 1.0);
        if (g.gamma > 0.0 && w[i] > 0.0) grad[i] += w[i] * g.value(v[i]);
    }
    return RadialFn(std::move(grad));
}

Tridiagonal energy_hessian(const RadialFn& u, const RadialGrid& grid, const ProblemParams& params) {
    require_match(u, grid);
    const std::size_t n = interior_count(grid);
    const double p = params.p;
    const double h = grid.spacing();
    const auto cw = grid.cell_weights();
    const auto w = grid.weights();
    const auto v = u.values();
    const auto& g = params.term;

    double dmax = 0.0;
    for (std::size_t i = 0; i < grid.cells(); ++i) dmax = std::max(dmax, std::abs(v[i + 1] - v[i]) / h);
    const double dfloor = (p < 2.0) ? 1e-12 * std::max(dmax, 1e-300) : 0.0;

    Tridiagonal t;
    t.diag.assign(n, 0.0);
    t.lower.assign(n - 1, 0.0);
    t.upper.assign(n - 1, 0.0);
    for (std::size_t i = 0; i < grid.cells(); ++i) {
        const double d = std::max(std::abs(v[i + 1] - v[i]) / h, dfloor);
        const double k = cw[i] * (p - 1.0) * std::pow(d, p - 2.0) / (h * h);
        t.diag[i] += k;
        if (i + 1 < n) {
            t.diag[i + 1] += k;
            t.upper[i] -= k;
            t.lower[i] -= k;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double a = std::abs(v[i]);
        if (a > 0.0 || p >= 2.0) t.diag[i] -= params.lambda * (p - 1.0) * w[i] * std::pow(a, p - 2.0);
        if (g.gamma > 0.0 && w[i] > 0.0) t.diag[i] += w[i] * g.derivative(v[i]);
    }
    return t;
}

Tridiagonal frozen_stiffness(const RadialFn& u, const RadialGrid& grid, double p) {
    require_match(u, grid);
    const std::size_t n = interior_count(grid);
    const double h = grid.spacing();
    const auto cw = grid.cell_weights();
    const auto v = u.values();

    double dmax = 0.0;
    for (std::size_t i = 0; i < grid.cells(); ++i) dmax = std::max(dmax, std::abs(v[i + 1] - v[i]) / h);
    // Regularizes degenerate (p > 2) or singular (p < 2) cells where u' = 0.
    const double eps = 1e-3 * (dmax > 0.0 ? dmax : 1.0);

    Tridiagonal t;
    t.diag.assign(n, 0.0);
    t.lower.assign(n - 1, 0.0);
    t.upper.assign(n - 1, 0.0);
    for (std::size_t i = 0; i < grid.cells(); ++i) {
        const double d = (v[i + 1] - v[i]) / h;
        const double k = cw[i] * std::pow(d * d + eps * eps, 0.5 * (p - 2.0)) / (h * h);
        t.diag[i] += k;
        if (i + 1 < n) {
            t.diag[i + 1] += k;
            t.upper[i] -= k;
            t.lower[i] -= k;
        }
    }
    return t;
}

void solve_tridiagonal(Tridiagonal t, std::span<double> rhs) {
    const auto n = static_cast<lapack_int>(t.diag.size());
    if (rhs.size() != t.diag.size()) throw Error(ErrorKind::InvalidParams, "tridiagonal size mismatch");
    const lapack_int info = LAPACKE_dgtsv(LAPACK_COL_MAJOR, n, 1, t.lower.data(), t.diag.data(),
                                          t.upper.data(), rhs.data(), n);
    if (info != 0) throw Error(ErrorKind::NoConvergence, "singular tridiagonal system");
}

double weighted_sup_norm(const RadialFn& v, const RadialGrid& grid) {
    require_match(v, grid);
    const auto s = grid.node_scales();
    double m = 0.0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) m = std::max(m, std::abs(v[i]) / s[i]);
    return m;
}

double sup_distance(const RadialFn& a, const RadialFn& b) {
    if (a.size() != b.size()) throw Error(ErrorKind::InvalidParams, "profile sizes differ");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

double boundary_slope(const RadialFn& u, const RadialGrid& grid) {
    require_match(u, grid);
    const std::size_t m = grid.cells();
    return (3.0 * u[m] - 4.0 * u[m - 1] + u[m - 2]) / (2.0 * grid.spacing());
}

void write_profile_csv(std::ostream& os, const RadialGrid& grid, const RadialFn& u) {
    require_match(u, grid);
    os << "r,u\n";
    char buf[64];
    const auto r = grid.nodes();
    for (std::size_t i = 0; i < u.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", r[i], u[i]);
        os << buf;
    }
}

ProfileTable read_profile_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("r,u", 0) != 0) {
        throw Error(ErrorKind::Io, "profile CSV must start with header r,u");
    }
    ProfileTable t;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw Error(ErrorKind::Io, "malformed profile row: " + line);
        try {
            t.r.push_back(std::stod(line.substr(0, comma)));
            t.u.push_back(std::stod(line.substr(comma + 1)));
        } catch (const std::exception&) {
            throw Error(ErrorKind::Io, "malformed profile row: " + line);
        }
    }
    return t;
}

}  // namespace plap
