#include "plap/problem.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "plap/error.hpp"

namespace plap {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidGrid: return "InvalidGrid";
        case ErrorKind::InvalidParams: return "InvalidParams";
        case ErrorKind::ZeroFunction: return "ZeroFunction";
        case ErrorKind::NotInW: return "NotInW";
        case ErrorKind::InvalidScale: return "InvalidScale";
        case ErrorKind::SingularGradient: return "SingularGradient";
        case ErrorKind::OutsideWindow: return "OutsideWindow";
        case ErrorKind::NoConvergence: return "NoConvergence";
        case ErrorKind::NoBracket: return "NoBracket";
        case ErrorKind::DegenerateLinear: return "DegenerateLinear";
        case ErrorKind::IntegrationStall: return "IntegrationStall";
        case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

void check_params(const ProblemParams& params, bool allow_linear) {
    auto fail = [](const std::string& msg) { throw Error(ErrorKind::InvalidParams, msg); };
    if (params.dim < 2) fail("dimension must be at least 2");
    if (!(params.radius > 0.0) || !std::isfinite(params.radius)) fail("radius must be positive");
    if (!(params.p > 1.0) || !std::isfinite(params.p)) fail("p must exceed 1");
    if (!std::isfinite(params.lambda)) fail("lambda must be finite");
    const auto& g = params.term;
    if (!(g.alpha > 0.0 && g.alpha < 1.0)) fail("alpha must lie in (0, 1)");
    if (!std::isfinite(g.gamma) || g.gamma < 0.0) fail("gamma must be non-negative");
    if (g.gamma == 0.0 && !allow_linear) fail("gamma = 0 is only accepted by the shooting oracle");
}

double sphere_area(int dim) {
    const double n = static_cast<double>(dim);
    return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

}  // namespace plap
