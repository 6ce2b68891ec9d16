#include "plap/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>

#include "plap/error.hpp"

namespace plap {

namespace {

void check_domain(double p, double alpha, double m1, double m2) {
    if (!(p > 1.0)) throw Error(ErrorKind::InvalidParams, "p must exceed 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorKind::InvalidParams, "alpha must lie in (0, 1)");
    if (!(m1 > 0.0) || !(m2 > 0.0)) throw Error(ErrorKind::InvalidParams, "m1 and m2 must be positive");
}

}  // namespace

bool check_constants(double p, double alpha, double m1, double m2) {
    check_domain(p, alpha, m1, m2);
    return p * m1 / (1.0 - alpha) > m2 && m2 >= m1;
}

ExistenceWindow existence_window(int dim, double p, double alpha, double m1, double m2, double lambda1) {
    if (dim < 2) throw Error(ErrorKind::InvalidParams, "dimension must be at least 2");
    if (!(lambda1 > 0.0)) throw Error(ErrorKind::InvalidParams, "lambda1 must be positive");
    if (!check_constants(p, alpha, m1, m2)) {
        throw Error(ErrorKind::InvalidParams, "constants violate p m1/(1-alpha) > m2 >= m1");
    }
    const double n = static_cast<double>(dim);
    ExistenceWindow w;
    w.constants_valid = true;
    w.denominator = p * n * m2 - (n - p) * (1.0 - alpha) * m1;
    w.ratio = p * (1.0 - alpha) * m1 / w.denominator;
    w.lambda_lo = lambda1;
    w.lambda_hi = lambda1 / (1.0 - w.ratio);
    return w;
}

FeasibilityResult pohozaev_feasibility(int dim, double p, double alpha, double m1, double m2, double lambda) {
    if (dim < 2) throw Error(ErrorKind::InvalidParams, "dimension must be at least 2");
    check_domain(p, alpha, m1, m2);
    const double n = static_cast<double>(dim);

    const double first = (p - n) / p;                    // beta >= first
    const double second = -n / p;                        // side depends on sign of lambda
    const double third = -n * m2 / ((1.0 - alpha) * m1);  // beta <= third

    FeasibilityResult r;
    r.beta_lo = first;
    r.beta_hi = third;
    if (lambda < 0.0) r.beta_lo = std::max(r.beta_lo, second);
    if (lambda > 0.0) r.beta_hi = std::min(r.beta_hi, second);
    r.feasible = r.beta_lo <= r.beta_hi;
    if (r.feasible) {
        if (r.beta_lo < r.beta_hi) {
            r.strictness_possible = true;
        } else {
            const double beta = r.beta_lo;
            const bool eq1 = beta == first;
            const bool eq2 = lambda == 0.0 || beta == second;
            const bool eq3 = beta == third;
            r.strictness_possible = !(eq1 && eq2 && eq3);
        }
    }
    return r;
}

PohozaevReport pohozaev_residual(const RadialFn& u, const RadialGrid& grid, const ProblemParams& params,
                                 SourceSign sign) {
    const Moments m = moments(u, grid, params);
    const double n = static_cast<double>(grid.dim());
    const double p = params.p;
    const auto& g = params.term;
    const double s = static_cast<double>(static_cast<int>(sign));

    PohozaevReport rep;
    rep.lhs = (n - p) / p * m.grad_p - params.lambda * n / p * m.mass_p - s * n * g.gamma * m.sub / (1.0 - g.alpha);
    const double slope = boundary_slope(u, grid);
    rep.rhs = -(1.0 - 1.0 / p) * std::pow(std::abs(slope), p) * std::pow(grid.radius(), n) * grid.sphere();
    rep.residual = rep.lhs - rep.rhs;
    return rep;
}

std::vector<FeasibilitySweepRow> feasibility_sweep(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dim_dist(2, 6);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<FeasibilitySweepRow> rows;
    rows.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        FeasibilitySweepRow row;
        row.dim = dim_dist(rng);
        row.p = 5.0 - 4.0 * unit(rng);  // (1, 5]
        do {
            row.alpha = unit(rng);
        } while (row.alpha == 0.0);
        row.m1 = 0.01 + 10.0 * unit(rng);
        row.m2 = row.m1 * (1.0 + 4.0 * unit(rng));
        row.lambda = -10.0 + 20.0 * unit(rng);
        row.result = pohozaev_feasibility(row.dim, row.p, row.alpha, row.m1, row.m2, row.lambda);
        rows.push_back(row);
    }
    return rows;
}

void write_feasibility_csv(std::ostream& os, const std::vector<FeasibilitySweepRow>& rows) {
    os << "N,p,alpha,m1,m2,lambda,beta_lo,beta_hi,feasible,strictness_possible\n";
    char buf[512];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d,%d\n", r.dim, r.p, r.alpha,
                      r.m1, r.m2, r.lambda, r.result.beta_lo, r.result.beta_hi, r.result.feasible ? 1 : 0,
                      r.result.strictness_possible ? 1 : 0);
        os << buf;
    }
}

}  // namespace plap
