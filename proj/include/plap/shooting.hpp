#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "plap/error.hpp"
#include "plap/problem.hpp"

namespace plap {

struct TraceSample {
    double r = 0.0;
    double u = 0.0;
    double du = 0.0;
};

/// Solution of the radial initial-value problem started from u(0) = d, u'(0) = 0.
struct ShootTrace {
    double d = 0.0;
    std::vector<TraceSample> samples;
    std::optional<double> first_zero;     ///< rho(d), the first zero of u
    std::optional<double> flux_at_zero;   ///< u'(rho(d))

    /// Linear interpolation of u at r; returns 0 beyond the first zero.
    double u_at(double r) const;
};

/// Thrown when the step is halved to nothing without a transversal zero
/// (u touching 0 tangentially); carries the partial trace.
class IntegrationStallError : public Error {
public:
    IntegrationStallError(const std::string& what, ShootTrace partial)
        : Error(ErrorKind::IntegrationStall, what), trace_(std::move(partial)) {}
    const ShootTrace& trace() const { return trace_; }

private:
    ShootTrace trace_;
};

/// Integrates -(r^(N-1) |u'|^(p-2) u')' = r^(N-1) (lambda |u|^(p-2) u - g(u)) in the
/// variables (u, w = r^(N-1) |u'|^(p-2) u') with classical RK4 at the given
/// step, starting from the series expansion at the center. Stops at the first
/// zero of u (located by halving the step down to ~1e-12 of its size and
/// extrapolating with the local slope) or at r_max. gamma = 0 is allowed as a
/// linear test mode. Throws InvalidParams for d <= 0 or bad step/r_max.
ShootTrace integrate_ivp(double d, const ProblemParams& params, double step, double r_max);

struct ShootOptions {
    double step = 1e-4;
    double tol = 1e-9;            ///< on |rho(d) - R| / R
    double r_max_factor = 1.5;    ///< integrate to this multiple of R
    int max_bisections = 200;
};

/// Bisection on the center value d until rho(d) matches radius. A trajectory
/// without a zero before r_max counts as rho = +inf. Throws DegenerateLinear
/// for gamma = 0, NoBracket without a sign change of rho - R over the bracket,
/// and NoConvergence when the bracket collapses onto a discontinuity.
ShootTrace shoot_bvp(const ProblemParams& params, double radius, std::pair<double, double> bracket,
                     const ShootOptions& opts = {});

struct SweepRow {
    double radius = 0.0;
    bool solvable = false;
    std::optional<double> d;
    std::optional<double> flux;
    std::string status;  ///< "ok" or the failure kind
};

/// Attempts shoot_bvp for every radius with a bracket taken from a shared
/// logarithmic scan of the center value. Per-row failures are recorded, never thrown.
std::vector<SweepRow> sweep_radius(const ProblemParams& params, std::span<const double> radii,
                                   const ShootOptions& opts = {});

struct Band {
    double lower = 0.0;
    double upper = 0.0;
    bool contiguous = false;
    std::size_t count = 0;
};

/// Smallest and largest solvable radius and whether all rows between them are solvable.
std::optional<Band> solvable_band(const std::vector<SweepRow>& rows);

/// CSV `r,u,du`.
void write_trace_csv(std::ostream& os, const ShootTrace& trace);
/// CSV `R,solvable,d,flux` (empty fields for missing values).
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

}  // namespace plap
