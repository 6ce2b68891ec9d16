#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "plap/error.hpp"
#include "plap/radial.hpp"
#include "plap/shooting.hpp"
#include "plap/solver.hpp"

using namespace plap;
using std::numbers::pi;

namespace {

double bessel_j0_zero() {
    double x = 2.4;
    for (int i = 0; i < 50; ++i) x += std::cyl_bessel_j(0.0, x) / std::cyl_bessel_j(1.0, x);
    return x;
}

ProblemParams linear(int dim, double lambda) {
    ProblemParams pr;
    pr.dim = dim;
    pr.p = 2.0;
    pr.lambda = lambda;
    pr.term = {0.0, 0.5};
    return pr;
}

ProblemParams baseline() {
    ProblemParams pr;
    pr.dim = 2;
    pr.p = 2.0;
    pr.lambda = 7.0;
    pr.term = {1.0, 0.5};
    return pr;
}

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

TEST_CASE("linear problem hits the first Dirichlet zero independently of d") {
    const ProblemParams ball = linear(3, pi * pi);
    for (double d : {1.0, 2.0}) {
        const ShootTrace t = integrate_ivp(d, ball, 1e-4, 2.0);
        REQUIRE(t.first_zero.has_value());
        CHECK(std::abs(*t.first_zero - 1.0) < 1e-6);
        // u = d sin(pi r) / (pi r), so u'(1) = -d.
        REQUIRE(t.flux_at_zero.has_value());
        CHECK(*t.flux_at_zero == doctest::Approx(-d).epsilon(1e-5));
    }
}

TEST_CASE("linear zeros scale like lambda^(-1/2)") {
    const double j01 = bessel_j0_zero();
    for (double lambda : {4.0, 25.0}) {
        const ShootTrace t3 = integrate_ivp(1.0, linear(3, lambda), 1e-4, 10.0);
        const ShootTrace t2 = integrate_ivp(1.0, linear(2, lambda), 1e-4, 10.0);
        REQUIRE(t3.first_zero.has_value());
        REQUIRE(t2.first_zero.has_value());
        CHECK(std::abs(*t3.first_zero - pi / std::sqrt(lambda)) < 1e-5);
        CHECK(std::abs(*t2.first_zero - j01 / std::sqrt(lambda)) < 1e-5);
    }
}

TEST_CASE("linear profile matches the exact solution along the trace") {
    const ShootTrace t = integrate_ivp(1.0, linear(3, pi * pi), 1e-3, 2.0);
    double worst = 0.0;
    for (const auto& s : t.samples) {
        const double exact = s.r == 0.0 ? 1.0 : std::sin(pi * s.r) / (pi * s.r);
        worst = std::max(worst, std::abs(s.u - exact));
    }
    CHECK(worst < 1e-7);
    CHECK(t.u_at(0.5) == doctest::Approx(2.0 / pi).epsilon(1e-6));
    CHECK(t.u_at(1.5) == 0.0);
}

TEST_CASE("rk4 error falls at fourth order") {
    const ProblemParams pr = linear(3, pi * pi);
    auto err = [&](double h) { return std::abs(*integrate_ivp(1.0, pr, h, 2.0).first_zero - 1.0); };
    const double e1 = err(0.04), e2 = err(0.02), e3 = err(0.01);
    CHECK(e1 / e2 > 10.0);
    CHECK(e2 / e3 > 10.0);
}

TEST_CASE("trajectory without a zero stops at r_max") {
    ProblemParams pr = linear(2, 1.0);
    const ShootTrace t = integrate_ivp(1.0, pr, 1e-3, 1.0);
    CHECK(!t.first_zero.has_value());
    CHECK(t.samples.back().r == doctest::Approx(1.0));
    for (const auto& s : t.samples) CHECK(s.u > 0.0);
}

TEST_CASE("ivp input errors") {
    const ProblemParams pr = baseline();
    CHECK(kind_of([&] { integrate_ivp(0.0, pr, 1e-3, 1.0); }) == ErrorKind::InvalidParams);
    CHECK(kind_of([&] { integrate_ivp(-1.0, pr, 1e-3, 1.0); }) == ErrorKind::InvalidParams);
    CHECK(kind_of([&] { integrate_ivp(1.0, pr, 0.0, 1.0); }) == ErrorKind::InvalidParams);
    CHECK(kind_of([&] { integrate_ivp(1.0, pr, 1e-3, -1.0); }) == ErrorKind::InvalidParams);
}

TEST_CASE("boundary value shooting matches the variational solution") {
    const ShootTrace t = shoot_bvp(baseline(), 1.0, {1.0, 3.0});
    REQUIRE(t.first_zero.has_value());
    CHECK(std::abs(*t.first_zero - 1.0) < 1e-8);
    CHECK(t.d == doctest::Approx(1.609863236547).epsilon(1e-8));

    const RadialGrid g = build_grid(1.0, 2, 1024);
    const Solution s = solve(g, baseline());
    double dist = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) dist = std::max(dist, std::abs(s.u[i] - t.u_at(g.nodes()[i])));
    CHECK(dist < 1e-4);
}

TEST_CASE("boundary value shooting errors") {
    CHECK(kind_of([] { shoot_bvp(linear(2, 7.0), 1.0, {1.0, 3.0}); }) == ErrorKind::DegenerateLinear);
    // Both ends reach zero before R = 1 (too large) or both miss it.
    CHECK(kind_of([] { shoot_bvp(baseline(), 1.0, {1.0, 1.2}); }) == ErrorKind::NoBracket);
    CHECK(kind_of([] { shoot_bvp(baseline(), 1.0, {0.0, 2.0}); }) == ErrorKind::InvalidParams);
}

TEST_CASE("radius sweep records per-row outcomes") {
    const ProblemParams pr = baseline();
    CHECK(sweep_radius(pr, std::span<const double>{}).empty());
    CHECK(!solvable_band({}).has_value());

    const std::vector<double> radii = {0.5, 1.0};
    const auto rows = sweep_radius(pr, radii);
    REQUIRE(rows.size() == 2);
    CHECK(!rows[0].solvable);
    CHECK(rows[0].status != "ok");
    CHECK(!rows[0].d.has_value());
    CHECK(rows[1].solvable);
    CHECK(rows[1].status == "ok");
    CHECK(*rows[1].d == doctest::Approx(1.6098632).epsilon(1e-6));
    CHECK(*rows[1].flux < 0.0);

    const auto band = solvable_band(rows);
    REQUIRE(band.has_value());
    CHECK(band->lower == 1.0);
    CHECK(band->upper == 1.0);
    CHECK(band->contiguous);
    CHECK(band->count == 1);

    const auto lin = sweep_radius(linear(2, 7.0), radii);
    for (const auto& r : lin) {
        CHECK(!r.solvable);
        CHECK(r.status == "DegenerateLinear");
    }
}

TEST_CASE("band detects gaps") {
    std::vector<SweepRow> rows(4);
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i].radius = 0.5 * (i + 1);
    rows[0].solvable = true;
    rows[2].solvable = true;
    const auto band = solvable_band(rows);
    REQUIRE(band.has_value());
    CHECK(band->lower == 0.5);
    CHECK(band->upper == 1.5);
    CHECK(!band->contiguous);
    CHECK(band->count == 2);
}

TEST_CASE("csv writers") {
    std::ostringstream tr;
    write_trace_csv(tr, integrate_ivp(1.0, linear(3, pi * pi), 0.1, 2.0));
    CHECK(tr.str().rfind("r,u,du\n", 0) == 0);

    std::vector<SweepRow> rows(1);
    rows[0].radius = 0.5;
    rows[0].status = "NoBracket";
    std::ostringstream sw;
    write_sweep_csv(sw, rows);
    CHECK(sw.str() == "R,solvable,d,flux\n0.5,0,,\n");
}
