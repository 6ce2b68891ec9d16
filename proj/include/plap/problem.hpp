#pragma once

#include <cmath>

namespace plap {

/// Power-law singular nonlinearity g(s) = gamma * s^(-alpha), 0 < alpha < 1.
///
/// The lower and upper comparison constants m1, m2 with
/// m1 s^(-alpha) <= g(s) <= m2 s^(-alpha) are both equal to gamma for this
/// family. gamma == 0 is only meaningful for the shooting oracle's linear test
/// mode; the variational solver rejects it.
struct SingularTerm {
    double gamma = 1.0;
    double alpha = 0.5;

    /// g(s), s > 0.
    double value(double s) const { return gamma * std::pow(s, -alpha); }
    /// G(s) = integral of g from 0 to s.
    double primitive(double s) const { return gamma * std::pow(s, 1.0 - alpha) / (1.0 - alpha); }
    /// g'(s) = -alpha * gamma * s^(-alpha-1).
    double derivative(double s) const { return -alpha * gamma * std::pow(s, -alpha - 1.0); }
    /// H(s) = G(s) / s^p, strictly decreasing on (0, inf) whenever gamma > 0.
    double scaled_primitive(double s, double p) const { return primitive(s) / std::pow(s, p); }

    double m1() const { return gamma; }
    double m2() const { return gamma; }

    /// The special case g(s) = s^(-alpha) / (1 + alpha) studied with the
    /// shooting method for p = 2.
    static SingularTerm chen(double alpha) { return {1.0 / (1.0 + alpha), alpha}; }
};

/// Scalar data of -Delta_p u = lambda |u|^(p-2) u - g(u) on the ball |x| < radius.
struct ProblemParams {
    int dim = 2;
    double p = 2.0;
    double lambda = 7.0;
    double radius = 1.0;
    SingularTerm term{};
};

/// Throws InvalidParams unless dim >= 2, radius > 0, p > 1, 0 < alpha < 1 and
/// gamma >= 0 (gamma > 0 when allow_linear is false).
void check_params(const ProblemParams& params, bool allow_linear = false);

/// Surface measure of the unit sphere in R^dim, 2 pi^(dim/2) / Gamma(dim/2).
double sphere_area(int dim);

}  // namespace plap
