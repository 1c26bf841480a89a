#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ncf/error.hpp"
#include "ncf/waves.hpp"
#include "oracles.hpp"

using namespace ncf;
constexpr double pi = std::numbers::pi;

TEST_CASE("support planes below a momentum bound") {
    auto g = make_group(GroupKind::SU2);
    const AlgebraVector X{0.3, 0.4, 0.0};
    auto s = support_planes(g, X, 2.2);
    CHECK(s.labels.size() == 5);
    REQUIRE(s.basis.size() == 1);
    CHECK((s.basis[0].c - X.c / X.norm()).norm() < 1e-15);
    CHECK(s.contains(MomentumVector(Eigen::Vector3d(0.6 * 2, 0.8 * 2, 0) + Eigen::Vector3d(-0.8, 0.6, 0) * 1.7)));
    CHECK_FALSE(s.contains({0.6 * 2.3, 0.8 * 2.3, 0}));

    auto t = support_planes(make_group("torus2"), {0.1, 0.2}, 1.5);
    CHECK(t.labels.size() == 9);
    CHECK(t.contains({1, -2}));
    CHECK_FALSE(t.contains({1, 0.5}));
}

TEST_CASE("spin floor") {
    CHECK(spin_floor(0.0) == 0);
    CHECK(spin_floor(2.999) == 2);
    CHECK(spin_floor(3.0) == 3);
    CHECK(spin_floor(MomentumVector{3, 4, 0}) == 5);
}

TEST_CASE("invariant waves are blind to the branch") {
    auto g = make_group(GroupKind::SU2);
    std::mt19937_64 rng(11);
    std::normal_distribution<double> n(0, 1);
    for (int t = 0; t < 40; ++t) {
        Eigen::Vector3d u(n(rng), n(rng), n(rng));
        u.normalize();
        const double r = 0.2 + 2.5 * std::min(std::abs(n(rng)), 3.0) / 3;
        Eigen::Vector3d perp = u.cross(Eigen::Vector3d(n(rng), n(rng), n(rng)));
        const int m = t % 5 - 2;
        const MomentumVector p(m * u + perp);
        const AlgebraVector X(r * u), X1(r * u + 2 * pi * u), X2(r * u - 4 * pi * u);
        for (Scheme sc : {Scheme::Symmetric, Scheme::Duflo}) {
            const cd v = invariant_wave_reduced(*g, X, p, sc);
            CHECK(std::abs(v - invariant_wave_reduced(*g, X1, p, sc)) < 1e-12);
            CHECK(std::abs(v - invariant_wave_reduced(*g, X2, p, sc)) < 1e-12);
        }
        const cd sym = invariant_wave_reduced(*g, X, p, Scheme::Symmetric);
        CHECK(std::abs(sym - std::polar(1.0, -m * r)) < 1e-12);
        const cd duf = invariant_wave_reduced(*g, X, p, Scheme::Duflo);
        CHECK(std::abs(duf - sym * r / std::sin(r)) < 1e-12);
        const MomentumVector off(p.c + 0.3 * u);
        CHECK(invariant_wave_reduced(*g, X, off, Scheme::Symmetric) == cd(0.0));
    }
}

TEST_CASE("Cesaro average selects the support") {
    auto g = make_group(GroupKind::SU2);
    const AlgebraVector X{0, 0, 1.1};
    const MomentumVector on{1.3, 0, 2}, off{1.3, 0, 2.3};
    for (int N : {16, 128, 1024}) CHECK(std::abs(cesaro_branch_sum(*g, X, on, N) - std::polar(1.0, -2.2)) < 1e-12);
    double prev = 1.0;
    for (int N : {16, 64, 256, 1024}) {
        const double a = std::abs(cesaro_branch_sum(*g, X, off, N));
        // |sum| <= 1 / ((2N+1) |sin(pi q)|) for a fractional part q
        CHECK(a <= 1.0 / ((2 * N + 1) * std::sin(pi * 0.3)) + 1e-15);
        CHECK(a < prev);
        prev = a;
    }
}

TEST_CASE("position projection sums the branches") {
    auto u = make_group(GroupKind::U1);
    const double sigma = 2.0;
    auto psi = PositionFunction::gaussian(u, sigma);
    const AlgebraVector X{0.7};
    cd want = 0.0;
    for (int k = -200; k <= 200; ++k) want += std::exp(-std::pow(0.7 + 2 * pi * k, 2) / (2 * sigma * sigma));
    auto w = auto_window(psi, X);
    CHECK(w.lo == -w.hi);
    CHECK(std::abs(project_position(psi, X, w) - want) < 1e-14);
    try {
        project_position(psi, X, {0, 0});
        FAIL("narrow window accepted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::WindowTooSmall);
    }

    // On su(2) the shifts run along X / |X|.
    auto g = make_group(GroupKind::SU2);
    auto psi3 = PositionFunction::gaussian(g, 1.5);
    const Eigen::Vector3d x(0.2, -0.5, 0.9);
    cd want3 = 0.0;
    for (int k = -100; k <= 100; ++k) {
        const double r = (x + 2 * pi * k * x.normalized()).norm();
        want3 += std::exp(-r * r / (2 * 1.5 * 1.5));
    }
    const AlgebraVector X3(x);
    CHECK(std::abs(project_position(psi3, X3, auto_window(psi3, X3)) - want3) < 1e-12);
}
