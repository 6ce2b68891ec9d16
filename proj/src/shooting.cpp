#include "plap/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace plap {

namespace {

struct State {
    double u;
    double w;
};

class RadialOde {
public:
    explicit RadialOde(const ProblemParams& params)
        : params_(params), e_(static_cast<double>(params.dim - 1)), inv_(1.0 / (params.p - 1.0)) {}

    double slope(double r, double w) const {
        if (r <= 0.0) return 0.0;
        return std::copysign(std::pow(std::abs(w) / std::pow(r, e_), inv_), w);
    }

    // False when the singular term would be evaluated at u <= 0.
    bool rhs(double r, const State& s, State& out) const {
        const auto& g = params_.term;
        double source = params_.lambda * std::copysign(std::pow(std::abs(s.u), params_.p - 1.0), s.u);
        if (g.gamma > 0.0) {
            if (!(s.u > 0.0)) return false;
            source -= g.value(s.u);
        }
        out.u = slope(r, s.w);
        out.w = -std::pow(r, e_) * source;
        return true;
    }

    bool rk4(double r, const State& s, double h, State& out) const {
        State k1, k2, k3, k4;
        if (!rhs(r, s, k1)) return false;
        if (!rhs(r + 0.5 * h, {s.u + 0.5 * h * k1.u, s.w + 0.5 * h * k1.w}, k2)) return false;
        if (!rhs(r + 0.5 * h, {s.u + 0.5 * h * k2.u, s.w + 0.5 * h * k2.w}, k3)) return false;
        if (!rhs(r + h, {s.u + h * k3.u, s.w + h * k3.w}, k4)) return false;
        out.u = s.u + h / 6.0 * (k1.u + 2.0 * k2.u + 2.0 * k3.u + k4.u);
        out.w = s.w + h / 6.0 * (k1.w + 2.0 * k2.w + 2.0 * k3.w + k4.w);
        return true;
    }

private:
    const ProblemParams& params_;
    double e_;
    double inv_;
};

constexpr double kInf = std::numeric_limits<double>::infinity();

// rho(d) - R, with +inf when no transversal zero occurs before r_max.
double mismatch(double d, const ProblemParams& params, double radius, const ShootOptions& opts, ShootTrace* keep) {
    try {
        ShootTrace t = integrate_ivp(d, params, opts.step, opts.r_max_factor * radius);
        const double v = t.first_zero ? *t.first_zero - radius : kInf;
        if (keep) *keep = std::move(t);
        return v;
    } catch (const IntegrationStallError&) {
        return kInf;
    }
}

}  // namespace

double ShootTrace::u_at(double r) const {
    if (samples.empty()) return 0.0;
    if (first_zero && r >= *first_zero) return 0.0;
    if (r <= samples.front().r) return samples.front().u;
    auto it = std::lower_bound(samples.begin(), samples.end(), r,
                               [](const TraceSample& s, double x) { return s.r < x; });
    if (it == samples.end()) {
        // Between the last sample and the zero.
        const auto& last = samples.back();
        if (first_zero && *first_zero > last.r) return last.u * (*first_zero - r) / (*first_zero - last.r);
        return last.u;
    }
    const auto& b = *it;
    const auto& a = *(it - 1);
    const double s = (r - a.r) / (b.r - a.r);
    return a.u + s * (b.u - a.u);
}

ShootTrace integrate_ivp(double d, const ProblemParams& params, double step, double r_max) {
    check_params(params, /*allow_linear=*/true);
    if (!(d > 0.0) || !std::isfinite(d)) throw Error(ErrorKind::InvalidParams, "center value must be positive");
    if (!(step > 0.0) || !(r_max > 0.0)) throw Error(ErrorKind::InvalidParams, "step and r_max must be positive");

    const RadialOde ode(params);
    const double n = static_cast<double>(params.dim);
    const double p = params.p;
    const auto& g = params.term;

    ShootTrace trace;
    trace.d = d;
    trace.samples.push_back({0.0, d, 0.0});

    // Series start: w ~ -K r^N / N with K the source at the center.
    const double k = params.lambda * std::pow(d, p - 1.0) - (g.gamma > 0.0 ? g.value(d) : 0.0);
    double r = std::min(step, r_max);
    State s;
    s.w = -k * std::pow(r, n) / n;
    s.u = d - std::copysign(std::pow(std::abs(k) / n, 1.0 / (p - 1.0)), k) * (p - 1.0) / p *
                  std::pow(r, p / (p - 1.0));
    if (!(s.u > 0.0)) throw Error(ErrorKind::InvalidParams, "step too coarse for the series start");
    trace.samples.push_back({r, s.u, ode.slope(r, s.w)});

    const double min_step = 1e-12 * step;
    const std::size_t max_steps = static_cast<std::size_t>(64.0 * r_max / step) + 100000;
    double h = step;
    for (std::size_t count = 0; r < r_max; ++count) {
        if (count > max_steps) throw IntegrationStallError("step budget exhausted", std::move(trace));
        const double hs = std::min(h, r_max - r);
        State next;
        if (ode.rk4(r, s, hs, next) && next.u > 0.0) {
            r += hs;
            s = next;
            trace.samples.push_back({r, s.u, ode.slope(r, s.w)});
            h = std::min(step, 2.0 * h);
            continue;
        }
        h = 0.5 * hs;
        if (h < min_step) {
            const double du = ode.slope(r, s.w);
            if (!(du < 0.0)) throw IntegrationStallError("u touches zero without crossing", std::move(trace));
            trace.first_zero = r - s.u / du;
            trace.flux_at_zero = du;
            return trace;
        }
    }
    return trace;
}

ShootTrace shoot_bvp(const ProblemParams& params, double radius, std::pair<double, double> bracket,
                     const ShootOptions& opts) {
    check_params(params, /*allow_linear=*/true);
    if (params.term.gamma == 0.0) {
        throw Error(ErrorKind::DegenerateLinear, "gamma = 0: the boundary problem is a linear eigenproblem");
    }
    if (!(radius > 0.0)) throw Error(ErrorKind::InvalidParams, "radius must be positive");
    double lo = std::min(bracket.first, bracket.second);
    double hi = std::max(bracket.first, bracket.second);

    ShootTrace best;
    const double m_lo = mismatch(lo, params, radius, opts, nullptr);
    const double m_hi = mismatch(hi, params, radius, opts, nullptr);
    if (std::abs(m_lo) < opts.tol * radius) return integrate_ivp(lo, params, opts.step, opts.r_max_factor * radius);
    if (std::abs(m_hi) < opts.tol * radius) return integrate_ivp(hi, params, opts.step, opts.r_max_factor * radius);
    if ((m_lo > 0.0) == (m_hi > 0.0)) {
        throw Error(ErrorKind::NoBracket, "rho(d) - R does not change sign over the bracket");
    }
    const bool lo_positive = m_lo > 0.0;
    for (int it = 0; it < opts.max_bisections; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double m = mismatch(mid, params, radius, opts, &best);
        if (std::abs(m) < opts.tol * radius) return best;
        if ((m > 0.0) == lo_positive) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) break;
    }
    throw Error(ErrorKind::NoConvergence, "bisection on the center value did not match the radius");
}

std::vector<SweepRow> sweep_radius(const ProblemParams& params, std::span<const double> radii,
                                   const ShootOptions& opts) {
    std::vector<SweepRow> rows;
    if (radii.empty()) return rows;
    rows.reserve(radii.size());

    if (params.term.gamma == 0.0) {
        for (double rad : radii) rows.push_back({rad, false, std::nullopt, std::nullopt, "DegenerateLinear"});
        return rows;
    }

    // rho(d) does not depend on the target radius, so one scan serves every row.
    const double r_top = *std::max_element(radii.begin(), radii.end());
    const auto& g = params.term;
    const double d_eq = params.lambda > 0.0
                            ? std::pow(g.gamma / params.lambda, 1.0 / (params.p - 1.0 + g.alpha))
                            : 1.0;
    constexpr int kScan = 61;
    std::vector<double> ds(kScan);
    std::vector<double> rho(kScan);
    for (int i = 0; i < kScan; ++i) {
        ds[i] = d_eq * std::pow(10.0, -1.0 + 5.0 * i / (kScan - 1));
        rho[i] = mismatch(ds[i], params, r_top, opts, nullptr) + r_top;
    }

    for (double rad : radii) {
        SweepRow row{rad, false, std::nullopt, std::nullopt, "NoBracket"};
        // Largest-amplitude branch first: scan from the top of the d range down.
        for (int i = kScan - 1; i > 0; --i) {
            const double a = rho[i] - rad;
            const double b = rho[i - 1] - rad;
            if (!std::isfinite(a) && !std::isfinite(b)) continue;
            if ((a > 0.0) == (b > 0.0)) continue;
            try {
                const ShootTrace t = shoot_bvp(params, rad, {ds[i - 1], ds[i]}, opts);
                row.solvable = true;
                row.d = t.d;
                row.flux = t.flux_at_zero;
                row.status = "ok";
            } catch (const Error& e) {
                row.status = std::string(to_string(e.kind()));
            }
            break;
        }
        rows.push_back(row);
    }
    return rows;
}

std::optional<Band> solvable_band(const std::vector<SweepRow>& rows) {
    std::optional<std::size_t> first;
    std::optional<std::size_t> last;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i].solvable) continue;
        if (!first) first = i;
        last = i;
    }
    if (!first) return std::nullopt;
    Band b;
    b.lower = rows[*first].radius;
    b.upper = rows[*last].radius;
    b.count = static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return r.solvable; }));
    b.contiguous = b.count == *last - *first + 1;
    return b;
}

void write_trace_csv(std::ostream& os, const ShootTrace& trace) {
    os << "r,u,du\n";
    char buf[96];
    for (const auto& s : trace.samples) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", s.r, s.u, s.du);
        os << buf;
    }
    if (trace.first_zero) {
        std::snprintf(buf, sizeof buf, "%.17g,0,%.17g\n", *trace.first_zero, trace.flux_at_zero.value_or(0.0));
        os << buf;
    }
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << "R,solvable,d,flux\n";
    char buf[128];
    for (const auto& row : rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%d,", row.radius, row.solvable ? 1 : 0);
        os << buf;
        if (row.d) {
            std::snprintf(buf, sizeof buf, "%.17g", *row.d);
            os << buf;
        }
        os << ',';
        if (row.flux) {
            std::snprintf(buf, sizeof buf, "%.17g", *row.flux);
            os << buf;
        }
        os << '\n';
    }
}

}  // namespace plap
