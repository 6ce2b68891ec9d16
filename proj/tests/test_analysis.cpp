#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "plap/analysis.hpp"
#include "plap/error.hpp"
#include "plap/solver.hpp"

using namespace plap;
using std::numbers::pi;

namespace {

template <class F>
ErrorKind kind_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an Error");
    return ErrorKind::Io;
}

}  // namespace

TEST_CASE("constants condition") {
    CHECK(check_constants(2.0, 0.5, 1.0, 1.0));
    CHECK(!check_constants(2.0, 0.5, 1.0, 5.0));
    CHECK(!check_constants(2.0, 0.5, 1.0, 0.5));
    CHECK(kind_of([] { check_constants(1.0, 0.5, 1.0, 1.0); }) == ErrorKind::InvalidParams);
    CHECK(kind_of([] { check_constants(2.0, 1.0, 1.0, 1.0); }) == ErrorKind::InvalidParams);
    CHECK(kind_of([] { check_constants(2.0, 0.5, 0.0, 1.0); }) == ErrorKind::InvalidParams);
}

TEST_CASE("existence window examples") {
    const ExistenceWindow w2 = existence_window(2, 2.0, 0.5, 1.0, 1.0, 5.7832);
    CHECK(w2.denominator == doctest::Approx(4.0));
    CHECK(w2.ratio == doctest::Approx(0.25));
    CHECK(w2.lambda_lo == 5.7832);
    CHECK(w2.lambda_hi == doctest::Approx(7.7109).epsilon(1e-4));
    CHECK(w2.contains(7.0));
    CHECK(!w2.contains(5.7832));
    CHECK(w2.contains(w2.lambda_hi));

    const ExistenceWindow w3 = existence_window(3, 2.0, 0.5, 1.0, 1.0, 9.8696);
    CHECK(w3.denominator == doctest::Approx(5.5));
    CHECK(w3.ratio == doctest::Approx(2.0 / 11.0));
    CHECK(w3.lambda_hi == doctest::Approx(12.063).epsilon(1e-4));

    const ExistenceWindow thin = existence_window(2, 2.0, 0.99, 1.0, 1.0, 5.7832);
    CHECK(thin.ratio == doctest::Approx(2.0 * 0.01 / thin.denominator));
    CHECK((thin.lambda_hi - thin.lambda_lo) / thin.lambda_lo < 0.02);

    CHECK(kind_of([] { existence_window(2, 2.0, 0.5, 1.0, 5.0, 5.78); }) == ErrorKind::InvalidParams);
    CHECK(kind_of([] { existence_window(2, 2.0, 0.5, 1.0, 1.0, 0.0); }) == ErrorKind::InvalidParams);
}

TEST_CASE("window is non-empty for every admissible constant set") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    int checked = 0;
    while (checked < 1000) {
        const int n = 2 + static_cast<int>(u01(rng) * 5);
        const double p = 1.0 + 1e-6 + 5.0 * u01(rng);
        const double alpha = 1e-6 + (1.0 - 2e-6) * u01(rng);
        const double m1 = std::exp(-3.0 + 6.0 * u01(rng));
        const double m2 = m1 * (1.0 + 5.0 * u01(rng));
        if (!check_constants(p, alpha, m1, m2)) continue;
        ++checked;
        const ExistenceWindow w = existence_window(n, p, alpha, m1, m2, 1.0 + 10.0 * u01(rng));
        CHECK(w.denominator > 0.0);
        CHECK(w.ratio > 0.0);
        CHECK(w.ratio < 1.0);
        CHECK(w.lambda_hi > w.lambda_lo);
    }
}

TEST_CASE("feasibility interval examples") {
    const FeasibilityResult a = pohozaev_feasibility(3, 2.0, 0.5, 1.0, 1.0, -1.0);
    CHECK(a.beta_lo == doctest::Approx(-0.5));
    CHECK(a.beta_hi == doctest::Approx(-6.0));
    CHECK(!a.feasible);

    const FeasibilityResult b = pohozaev_feasibility(2, 2.0, 0.5, 1.0, 1.0, 1.0);
    CHECK(b.beta_lo == doctest::Approx(0.0));
    CHECK(b.beta_hi == doctest::Approx(-4.0));  // min(-1, -4)
    CHECK(!b.feasible);

    const FeasibilityResult c = pohozaev_feasibility(2, 2.0, 0.5, 1.0, 1.0, 0.0);
    CHECK(c.beta_lo == doctest::Approx(0.0));
    CHECK(c.beta_hi == doctest::Approx(-4.0));
    CHECK(!c.feasible);
    CHECK(!c.certifies_nonexistence());

    CHECK(kind_of([] { pohozaev_feasibility(2, 1.0, 0.5, 1.0, 1.0, 0.0); }) == ErrorKind::InvalidParams);
    CHECK(kind_of([] { pohozaev_feasibility(1, 2.0, 0.5, 1.0, 1.0, 0.0); }) == ErrorKind::InvalidParams);
}

TEST_CASE("feasibility reproduces each printed inequality") {
    // With m2 << m1 (outside the usual ordering) the third bound can be made
    // loose enough to expose the other two.
    const FeasibilityResult r = pohozaev_feasibility(2, 4.0, 0.5, 100.0, 1.0, -1.0);
    // beta >= (p - N)/p = 0.5, beta >= -N/p = -0.5 (lambda < 0), beta <= -N m2/((1-alpha) m1) = -0.04
    CHECK(r.beta_lo == doctest::Approx(0.5));
    CHECK(r.beta_hi == doctest::Approx(-0.04));
    CHECK(!r.feasible);

    const FeasibilityResult s = pohozaev_feasibility(6, 2.0, 0.5, 1000.0, 1.0, -1.0);
    // beta >= max(-2, -3) = -2, beta <= -0.012: feasible with slack.
    CHECK(s.beta_lo == doctest::Approx(-2.0));
    CHECK(s.beta_hi == doctest::Approx(-0.012));
    CHECK(s.feasible);
    CHECK(s.strictness_possible);
    CHECK(s.certifies_nonexistence());
}

TEST_CASE("enlarging m2 never creates a certificate") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int k = 0; k < 500; ++k) {
        const int n = 2 + static_cast<int>(u01(rng) * 5);
        const double p = 1.0 + 1e-3 + 4.0 * u01(rng);
        const double alpha = 0.01 + 0.98 * u01(rng);
        const double m1 = std::exp(-4.0 + 8.0 * u01(rng));
        const double m2 = std::exp(-4.0 + 8.0 * u01(rng));
        const double lambda = -10.0 + 20.0 * u01(rng);
        const FeasibilityResult small = pohozaev_feasibility(n, p, alpha, m1, m2, lambda);
        const FeasibilityResult large = pohozaev_feasibility(n, p, alpha, m1, 2.0 * m2, lambda);
        CHECK(large.beta_hi <= small.beta_hi);
        if (!small.feasible) CHECK(!large.feasible);
    }
}

TEST_CASE("randomized sweep is infeasible everywhere") {
    const auto rows = feasibility_sweep(2000, 42);
    REQUIRE(rows.size() == 2000);
    for (const auto& r : rows) {
        CHECK(r.m2 >= r.m1);
        CHECK(r.p > 1.0);
        CHECK(r.p <= 5.0);
        CHECK(!r.result.feasible);
    }
    std::ostringstream csv;
    write_feasibility_csv(csv, rows);
    CHECK(csv.str().rfind("N,p,alpha,m1,m2,lambda,beta_lo,beta_hi,feasible,strictness_possible\n", 0) == 0);
}

TEST_CASE("pohozaev residual of the zero profile") {
    const RadialGrid g = build_grid(1.0, 2, 64);
    ProblemParams pr;
    const PohozaevReport r = pohozaev_residual(RadialFn::zero(g), g, pr, SourceSign::Absorption);
    CHECK(r.lhs == 0.0);
    CHECK(r.rhs == 0.0);
    CHECK(r.residual == 0.0);
}

TEST_CASE("pohozaev residual vanishes on the exact eigenfunction") {
    ProblemParams pr;
    pr.dim = 3;
    pr.p = 2.0;
    pr.lambda = pi * pi;
    pr.term = {0.0, 0.5};
    double prev = 0.0;
    for (int cells : {256, 512, 1024, 2048}) {
        const RadialGrid g = build_grid(1.0, 3, cells);
        const RadialFn u = RadialFn::sample(g, [](double r) { return r == 0.0 ? 1.0 : std::sin(pi * r) / (pi * r); });
        const PohozaevReport rep = pohozaev_residual(u, g, pr, SourceSign::Absorption);
        CHECK(rep.rhs == doctest::Approx(-2.0 * pi).epsilon(1e-4));
        CHECK(rep.lhs == doctest::Approx(-2.0 * pi).epsilon(1e-4));
        if (prev > 0.0) CHECK(prev / std::abs(rep.residual) >= 1.8);
        prev = std::abs(rep.residual);
    }
}

TEST_CASE("source sign flips only the primitive term") {
    const RadialGrid g = build_grid(1.0, 2, 64);
    ProblemParams pr;
    const RadialFn u = RadialFn::sample(g, [](double r) { return 1.0 - r * r; });
    const PohozaevReport a = pohozaev_residual(u, g, pr, SourceSign::Absorption);
    const PohozaevReport b = pohozaev_residual(u, g, pr, SourceSign::Reaction);
    const Moments m = moments(u, g, pr);
    CHECK(a.lhs - b.lhs == doctest::Approx(2.0 * 2.0 * pr.term.gamma * m.sub / 0.5));
    CHECK(a.rhs == b.rhs);
}

TEST_CASE("pohozaev residual of the computed solution shrinks with the grid") {
    ProblemParams pr;
    pr.dim = 2;
    pr.p = 2.0;
    pr.lambda = 7.0;
    pr.term = {1.0, 0.5};
    double prev = 0.0;
    for (int cells : {256, 512, 1024}) {
        const RadialGrid g = build_grid(1.0, 2, cells);
        const Solution s = solve(g, pr);
        const double res = std::abs(pohozaev_residual(s.u, g, pr, SourceSign::Absorption).residual);
        if (prev > 0.0) {
            CHECK(res < prev);
            CHECK(res < 10.0 * (prev - res));
        }
        prev = res;
    }
}
