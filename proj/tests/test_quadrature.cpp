#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ncf/error.hpp"
#include "ncf/groups.hpp"
#include "ncf/quadrature.hpp"

using namespace ncf;
constexpr double pi = std::numbers::pi;

TEST_CASE("gauss_legendre rules") {
    auto r = gauss_legendre(2, -1, 1);
    CHECK(std::abs(std::abs(r.nodes[0]) - 1 / std::sqrt(3.0)) < 1e-15);
    CHECK(r.nodes[0] == doctest::Approx(-r.nodes[1]));
    CHECK(r.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r.weights[1] == doctest::Approx(1.0).epsilon(1e-15));

    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int t = 0; t < 20; ++t) {
        double a = u(rng), b = a + 0.1 + std::abs(u(rng));
        int n = 1 + t * 5;
        auto q = gauss_legendre(n, a, b);
        double s = 0;
        for (double w : q.weights) {
            CHECK(w > 0);
            s += w;
        }
        CHECK(s == doctest::Approx(b - a).epsilon(1e-13));
        // exact for degree 2n-1
        double m = 0;
        for (int i = 0; i < n; ++i) m += q.weights[i] * std::pow(q.nodes[i], 2 * n - 1);
        const double want = (std::pow(b, 2 * n) - std::pow(a, 2 * n)) / (2 * n);
        CHECK(m == doctest::Approx(want).epsilon(1e-11));
    }

    auto s = gauss_legendre(16, 0, pi);
    double v = 0;
    for (int i = 0; i < 16; ++i) v += s.weights[i] * std::pow(std::sin(s.nodes[i]), 2);
    CHECK(std::abs(v - pi / 2) < 1e-12);
    CHECK_THROWS_AS(gauss_legendre(0, 0, 1), Error);
    CHECK_THROWS_AS(gauss_legendre(3, 1, 0), Error);
}

TEST_CASE("integrate_algebra volumes and symmetry") {
    QuadratureSpec q;
    q.radial_order = 32;
    q.theta_order = 8;
    q.phi_order = 8;
    auto g = make_group(GroupKind::SU2);
    auto one = [](const AlgebraVector&) { return cd(1.0); };
    auto vol = integrate_algebra(one, *g, q, true);
    CHECK(std::abs(vol.value - 2 * pi * pi) < 1e-12);
    CHECK(vol.error < 1e-10);

    auto u = make_group(GroupKind::U1);
    CHECK(std::abs(integrate_algebra(one, *u, q, true).value - 2 * pi) < 1e-13);

    auto odd = [](const AlgebraVector& X) { return cd(X[0] * std::exp(X[1]) + X[2] * X[2] * X[2]); };
    q.cutoff_radius = 2.0;
    CHECK(std::abs(integrate_algebra(odd, *g, q, false, Region::CutoffBall).value) < 1e-14);
    // Odd in X overall: f(-X) = -f(X).
    auto odd2 = [](const AlgebraVector& X) { return cd(std::sin(X[0] + 2 * X[1] - X[2])); };
    CHECK(std::abs(integrate_algebra(odd2, *g, q, true).value) < 1e-14);

    QuadratureSpec bad = q;
    bad.radial_order = 1;
    CHECK_THROWS_AS(integrate_algebra(one, *g, bad, true), Error);
}

TEST_CASE("order-halving error estimate flags under-resolution") {
    QuadratureSpec q;
    q.radial_order = 6;
    auto u = make_group(GroupKind::U1);
    auto osc = [](const AlgebraVector& X) { return cd(std::cos(20 * X[0])); };
    auto r = integrate_algebra(osc, *u, q, false);
    CHECK_THROWS_AS(require_resolved(r, 1e-8, "test"), Error);
    q.radial_order = 160;
    auto r2 = integrate_algebra(osc, *u, q, false);
    CHECK_NOTHROW(require_resolved(r2, 1e-8, "test"));
    CHECK(std::abs(r2.value) < 1e-12);
}

TEST_CASE("integrate_plane") {
    QuadratureSpec q;
    q.radial_order = 40;
    q.phi_order = 8;
    q.cutoff_radius = 7.0;
    CHECK(integrate_plane([](double, double) { return cd(0.0); }, q) == cd(0.0));
    auto g = [](double rho, double) { return cd(std::exp(-rho * rho)); };
    CHECK(std::abs(integrate_plane(g, q) - pi) < 1e-10);
    CHECK(std::abs(integrate_plane(g, q, 0.3) - integrate_plane(g, q)) < 1e-12);
    q.cutoff_radius = 1.0;
    try {
        integrate_plane(g, q);
        FAIL("truncated integrand accepted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::PlaneCutoffTooSmall);
    }
}
