#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "plap/problem.hpp"

namespace plap {

/// Uniform mesh r_i = i h on [0, R] with trapezoidal weights for the measure
/// |S_{N-1}| r^(N-1) dr, so that sum_i w_i f(r_i) approximates the integral of a
/// radial f over the ball.
class RadialGrid {
public:
    double radius() const { return radius_; }
    int dim() const { return dim_; }
    /// Number of cells M; there are M + 1 nodes.
    std::size_t cells() const { return nodes_.size() - 1; }
    std::size_t size() const { return nodes_.size(); }
    double spacing() const { return spacing_; }
    double sphere() const { return sphere_; }

    std::span<const double> nodes() const { return nodes_; }
    std::span<const double> weights() const { return weights_; }
    /// |S| h rho_{i+1/2}^(N-1) for cell [r_i, r_{i+1}], rho the midpoint.
    std::span<const double> cell_weights() const { return cell_weights_; }
    /// |S| h max(r_i, h/2)^(N-1): converts a nodal gradient entry into a
    /// pointwise residual of the discrete Euler-Lagrange equation.
    std::span<const double> node_scales() const { return node_scales_; }

    /// Exact ball volume |S| R^N / N for reference.
    double ball_volume() const;

private:
    friend RadialGrid build_grid(double radius, int dim, std::size_t cells);

    double radius_ = 0.0;
    int dim_ = 0;
    double spacing_ = 0.0;
    double sphere_ = 0.0;
    std::vector<double> nodes_;
    std::vector<double> weights_;
    std::vector<double> cell_weights_;
    std::vector<double> node_scales_;
};

/// Throws InvalidGrid when radius <= 0, dim < 2 or cells < 4.
RadialGrid build_grid(double radius, int dim, std::size_t cells);

/// Nodal values of a radial function on a grid. The value at r = R is pinned
/// to zero on construction and cannot be changed.
class RadialFn {
public:
    RadialFn() = default;
    explicit RadialFn(std::vector<double> values);

    /// Samples f at the grid nodes (the boundary node is set to 0).
    static RadialFn sample(const RadialGrid& grid, const std::function<double(double)>& f);
    static RadialFn zero(const RadialGrid& grid);

    std::size_t size() const { return values_.size(); }
    std::span<const double> values() const { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }

    /// Sets an interior node; throws InvalidParams for the boundary node.
    void set(std::size_t i, double v);

    RadialFn scaled(double s) const;
    /// Componentwise absolute value.
    RadialFn abs() const;
    bool is_zero() const;
    /// Minimum over interior nodes 0..M-1.
    double interior_min() const;

private:
    std::vector<double> values_;
};

struct Moments {
    double grad_p = 0.0;  ///< A = int |grad u|^p
    double mass_p = 0.0;  ///< B = int |u|^p
    double sub = 0.0;     ///< C = int |u|^(1-alpha)
};

Moments moments(const RadialFn& u, const RadialGrid& grid, const ProblemParams& params);

/// F(u) = A/p - lambda B/p + gamma C/(1-alpha).
double energy(const RadialFn& u, const RadialGrid& grid, const ProblemParams& params);
double energy(const Moments& m, const ProblemParams& params);

/// Floor below which the singular term is not evaluated.
inline constexpr double kPositivityFloor = 1e-12;

/// Exact partial derivatives of the discrete energy with respect to the
/// interior nodal values; the boundary entry is 0. Throws SingularGradient if
/// an interior node is below kPositivityFloor while gamma > 0.
RadialFn energy_gradient(const RadialFn& u, const RadialGrid& grid, const ProblemParams& params);

/// Tridiagonal matrix over the interior unknowns 0..M-1.
struct Tridiagonal {
    std::vector<double> lower;  ///< size n-1
    std::vector<double> diag;   ///< size n
    std::vector<double> upper;  ///< size n-1
};

/// Second derivatives of the discrete energy (same preconditions as the
/// gradient). Indefinite in general.
Tridiagonal energy_hessian(const RadialFn& u, const RadialGrid& grid, const ProblemParams& params);

/// Weighted stiffness matrix of the p-Dirichlet term frozen at u: cell
/// coefficients c_i (|D_i|^2 + eps^2)^((p-2)/2) / h. Symmetric positive definite.
Tridiagonal frozen_stiffness(const RadialFn& u, const RadialGrid& grid, double p);

/// Solves T x = rhs in place (partial pivoting). Throws NoConvergence if T is
/// numerically singular.
void solve_tridiagonal(Tridiagonal t, std::span<double> rhs);

/// max_i |v_i| / node_scale_i over interior nodes.
double weighted_sup_norm(const RadialFn& v, const RadialGrid& grid);

/// max_i |a_i - b_i| over nodes.
double sup_distance(const RadialFn& a, const RadialFn& b);

/// One-sided second-order derivative at r = R.
double boundary_slope(const RadialFn& u, const RadialGrid& grid);

/// CSV with header `r,u`, 17 significant digits.
void write_profile_csv(std::ostream& os, const RadialGrid& grid, const RadialFn& u);

struct ProfileTable {
    std::vector<double> r;
    std::vector<double> u;
};

/// Reads the `r,u` CSV format; throws Io on malformed input.
ProfileTable read_profile_csv(std::istream& is);

}  // namespace plap
