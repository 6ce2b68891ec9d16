#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "plap/eigenvalue.hpp"
#include "plap/error.hpp"

using namespace plap;
using std::numbers::pi;

namespace {

// First zero of J_0 by Newton iteration on the standard library Bessel function.
double bessel_j0_zero() {
    double x = 2.4;
    for (int i = 0; i < 50; ++i) x += std::cyl_bessel_j(0.0, x) / std::cyl_bessel_j(1.0, x);
    return x;
}

double quotient(const RadialFn& u, const RadialGrid& g, double p) {
    ProblemParams pr;
    pr.dim = g.dim();
    pr.p = p;
    pr.radius = g.radius();
    const Moments m = moments(u, g, pr);
    return m.grad_p / m.mass_p;
}

}  // namespace

TEST_CASE("bessel zero oracle") { CHECK(bessel_j0_zero() == doctest::Approx(2.404825557695773).epsilon(1e-14)); }

TEST_CASE("first eigenvalue of the Laplacian on the unit disk and ball") {
    const double j01 = bessel_j0_zero();
    const EigenResult disk = lambda1(build_grid(1.0, 2, 2048), 2.0);
    const EigenResult ball = lambda1(build_grid(1.0, 3, 2048), 2.0);
    CHECK(std::abs(disk.lambda1 - j01 * j01) / (j01 * j01) < 1e-2);
    CHECK(std::abs(ball.lambda1 - pi * pi) / (pi * pi) < 1e-2);
    // Much tighter in practice: second-order scheme.
    CHECK(std::abs(ball.lambda1 - pi * pi) / (pi * pi) < 1e-5);
}

TEST_CASE("eigenvalue scales like R^-p") {
    for (double p : {2.0, 3.0}) {
        const double l1 = lambda1(build_grid(1.0, 2, 256), p).lambda1;
        const double l2 = lambda1(build_grid(2.0, 2, 256), p).lambda1;
        CHECK(std::abs(l2 * std::pow(2.0, p) - l1) / l1 < 1e-6);
    }
}

TEST_CASE("eigenfunction is normalized, positive and non-increasing") {
    for (double p : {1.5, 2.0, 3.0}) {
        const RadialGrid g = build_grid(1.0, 2, 256);
        const EigenResult e = lambda1(g, p);
        ProblemParams pr;
        pr.p = p;
        CHECK(moments(e.eigfn, g, pr).mass_p == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(e.eigfn.interior_min() > 0.0);
        // For p < 2 the quotient barely sees the flat top, so allow noise there.
        for (std::size_t i = 0; i + 1 < e.eigfn.size(); ++i) CHECK(e.eigfn[i + 1] <= e.eigfn[i] * (1.0 + 1e-6));
        CHECK(quotient(e.eigfn, g, p) == doctest::Approx(e.lambda1).epsilon(1e-14));
        CHECK(e.lambda1 > 0.0);
    }
}

TEST_CASE("random profiles never beat the computed eigenvalue") {
    const RadialGrid g = build_grid(1.0, 2, 256);
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    for (double p : {2.0, 2.5}) {
        const double l1 = lambda1(g, p).lambda1;
        for (int k = 0; k < 20; ++k) {
            const double a = coef(rng), b = coef(rng), c = coef(rng);
            const RadialFn w = RadialFn::sample(g, [&](double r) {
                return (1.0 - r) * (1.0 + 0.5 * a * r + 0.3 * b * std::sin(5 * r) + 0.2 * c * r * r);
            });
            CHECK(quotient(w, g, p) >= l1 - 1e-9 * l1);
        }
    }
}

TEST_CASE("eigenvalue converges at second order for p = 2") {
    double prev = lambda1(build_grid(1.0, 2, 64), 2.0).lambda1;
    double prev_gap = 0.0;
    for (int cells : {128, 256, 512}) {
        const double cur = lambda1(build_grid(1.0, 2, cells), 2.0).lambda1;
        const double gap = std::abs(cur - prev);
        if (prev_gap > 0.0) CHECK(prev_gap / gap >= 1.8);
        prev_gap = gap;
        prev = cur;
    }
}

TEST_CASE("eigenvalue input errors") {
    const RadialGrid g = build_grid(1.0, 2, 32);
    CHECK_THROWS_AS(lambda1(g, 1.0), Error);
    EigenOptions tight;
    tight.max_iter = 1;
    tight.tol = 0.0;
    try {
        lambda1(g, 2.0, tight);
        FAIL("expected NoConvergence");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NoConvergence);
    }
}
