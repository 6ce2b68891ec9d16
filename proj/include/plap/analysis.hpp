#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "plap/problem.hpp"
#include "plap/radial.hpp"

namespace plap {

/// lambda in (lambda_lo, lambda_hi] guarantees a positive radial solution.
struct ExistenceWindow {
    double lambda_lo = 0.0;  ///< exclusive, equals lambda_1
    double lambda_hi = 0.0;  ///< inclusive, lambda_1 / (1 - ratio)
    bool constants_valid = false;
    double denominator = 0.0;  ///< p N m2 - (N - p)(1 - alpha) m1
    double ratio = 0.0;        ///< p (1 - alpha) m1 / denominator, in (0, 1)

    bool contains(double lambda) const { return lambda > lambda_lo && lambda <= lambda_hi; }
};

/// p m1 / (1 - alpha) > m2 >= m1. Throws InvalidParams unless p > 1,
/// 0 < alpha < 1 and m1, m2 > 0.
bool check_constants(double p, double alpha, double m1, double m2);

/// Throws InvalidParams when check_constants fails, lambda1 <= 0 or dim < 2.
ExistenceWindow existence_window(int dim, double p, double alpha, double m1, double m2, double lambda1);

/// Interval of multipliers beta satisfying the three sign conditions
///   (N - p)/p + beta >= 0,
///   -lambda (N/p + beta) >= 0,
///   -(N m2 / (1 - alpha) + beta m1) >= 0,
/// implemented exactly as stated (including the m1 coefficient on beta).
struct FeasibilityResult {
    double beta_lo = 0.0;
    double beta_hi = 0.0;
    bool feasible = false;             ///< beta_lo <= beta_hi
    bool strictness_possible = false;  ///< some feasible beta makes one inequality strict

    /// A feasible beta with one strict inequality rules out positive solutions
    /// of the reaction problem -Delta_p u = lambda |u|^(p-2) u + g(u).
    bool certifies_nonexistence() const { return feasible && strictness_possible; }
};

/// Throws InvalidParams for p <= 1, dim < 2, alpha outside (0, 1) or m1, m2 <= 0.
FeasibilityResult pohozaev_feasibility(int dim, double p, double alpha, double m1, double m2, double lambda);

/// Which sign the singular term carries in the equation.
enum class SourceSign {
    Absorption = -1,  ///< -Delta_p u = lambda |u|^(p-2) u - g(u)
    Reaction = 1,     ///< -Delta_p u = lambda |u|^(p-2) u + g(u)
};

struct PohozaevReport {
    double lhs = 0.0;  ///< volume terms
    double rhs = 0.0;  ///< boundary flux term
    double residual = 0.0;
};

/// Evaluates both sides of the Pohozaev identity on the ball by quadrature:
///   lhs = (N-p)/p A - lambda N/p B -/+ N gamma C / (1 - alpha)
///   rhs = -(1 - 1/p) |u'(R)|^p R^N |S|
/// with u'(R) from a one-sided second-order difference.
PohozaevReport pohozaev_residual(const RadialFn& u, const RadialGrid& grid, const ProblemParams& params,
                                 SourceSign sign);

struct FeasibilitySweepRow {
    int dim = 2;
    double p = 2.0;
    double alpha = 0.5;
    double m1 = 1.0;
    double m2 = 1.0;
    double lambda = 0.0;
    FeasibilityResult result;
};

/// Random parameter sets with dim in {2..6}, p in (1, 5], alpha in (0, 1),
/// m2 >= m1 > 0 and lambda in [-10, 10]. Deterministic for a given seed.
std::vector<FeasibilitySweepRow> feasibility_sweep(std::size_t count, std::uint64_t seed);

void write_feasibility_csv(std::ostream& os, const std::vector<FeasibilitySweepRow>& rows);

}  // namespace plap
