#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ncf/error.hpp"
#include "ncf/poisson.hpp"
#include "oracles.hpp"

using namespace ncf;
constexpr double pi = std::numbers::pi;

namespace {

PoissonCase make_case(PositionFunction psi, AlgebraVector X, const QuadratureSpec& q,
                      DerivativeMode d = DerivativeMode::Analytic) {
    PoissonCase c{std::move(psi), std::move(X), std::nullopt, q, d, std::nullopt, 1e-12};
    return c;
}

QuadratureSpec su2_quad() {
    QuadratureSpec q;
    q.radial_order = 128;
    q.theta_order = q.phi_order = 8;
    return q;
}

} // namespace

TEST_CASE("u(1) summation against a direct branch sum") {
    auto u = make_group(GroupKind::U1);
    QuadratureSpec q;
    q.radial_order = 256;
    for (double sigma : {0.5, 1.0, 2.0}) {
        auto psi = PositionFunction::gaussian(u, sigma);
        for (double x : {-2.5, 0.1, 1.7}) {
            const auto c = make_case(psi, {x}, q);
            const PoissonResult r = poisson_generic(c);
            double direct = 0.0;
            for (int k = -300; k <= 300; ++k) direct += std::exp(-std::pow(x + 2 * pi * k, 2) / (2 * sigma * sigma));
            // The default window tolerance is absolute below unit magnitude.
            CHECK(std::abs(r.lhs - direct) < 1e-12);
            CHECK(r.residual < 1e-12);
        }
    }
}

TEST_CASE("torus(1) agrees with u(1)") {
    QuadratureSpec q;
    q.radial_order = 256;
    auto u = PositionFunction::gaussian(make_group(GroupKind::U1), 0.8);
    auto t = PositionFunction::gaussian(make_group("torus1"), 0.8);
    int Ku = 0, Kt = 0;
    const cd a = poisson_rhs_u1(make_case(u, {0.4}, q), &Ku);
    const cd b = poisson_rhs_u1(make_case(t, {0.4}, q), &Kt);
    CHECK(Ku == Kt);
    CHECK(std::abs(a - b) < 1e-15);

    const auto spec = AbelianSpectrum::compute(u, q);
    CHECK(std::abs(spec.rhs_at({0.4}) - a) < 1e-15);
}

TEST_CASE("su2 summation") {
    auto g = make_group(GroupKind::SU2);
    const auto q = su2_quad();
    auto psi = PositionFunction::gaussian(g, 0.6);
    const AlgebraVector X{0.3, -0.6, 0.9};
    const auto c = make_case(psi, X, q);
    const PoissonResult r = poisson_generic(c);
    CHECK(r.residual < 1e-8 * std::abs(r.lhs));
    CHECK(r.spectral_cutoff > 0);
    CHECK(r.plane_radius > 0);

    // Rotating X leaves both sides unchanged for a class function.
    const Eigen::Matrix3d R = Eigen::AngleAxisd(1.1, Eigen::Vector3d(1, 2, 2).normalized()).toRotationMatrix();
    const cd rot = poisson_rhs_su2(make_case(psi, AlgebraVector(R * X.c), q));
    CHECK(std::abs(rot - r.rhs) < 1e-10 * std::abs(r.rhs));

    // Finite differences cross-check the analytic derivative.
    const cd fd = poisson_rhs_su2(make_case(psi, X, q, DerivativeMode::FiniteDifference));
    CHECK(std::abs(fd - r.rhs) < 1e-6 * std::abs(r.rhs));

    const auto j = to_json(c, r, false);
    CHECK(j.contains("residual"));
    CHECK_FALSE(j.contains("wall_time_ms"));
    CHECK(to_json(c, r, true).contains("wall_time_ms"));
}

TEST_CASE("radial transform matches the direct transform") {
    auto g = make_group(GroupKind::SU2);
    auto psi = PositionFunction::gaussian(g, 0.7);
    QuadratureSpec q;
    q.radial_order = 128;
    const RadialTransform rt(psi, q);
    for (double s : {0.0, 1.0, 2.5}) {
        CHECK(std::abs(rt.F(s) - ncft(psi, {0, 0, s}, q)) < 1e-12);
        const double h = 1e-4;
        const cd d2 = (rt.F(s + h) - 2.0 * rt.F(s) + rt.F(std::abs(s - h))) / (h * h);
        CHECK(std::abs(rt.d2F(s) - d2) < 1e-5);
    }
}

TEST_CASE("Poisson errors") {
    auto g = make_group(GroupKind::SU2);
    const auto q = su2_quad();
    auto psi = PositionFunction::gaussian(g, 0.6);
    for (const AlgebraVector& X : {AlgebraVector{0, 0, 0}, AlgebraVector{0, pi, 0}}) {
        try {
            poisson_rhs_su2(make_case(psi, X, q));
            FAIL("singular point accepted");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::OnSingularSet);
        }
    }
    try {
        poisson_rhs_u1(make_case(psi, {0.1, 0.2, 0.3}, q));
        FAIL("su2 accepted by the Abelian formula");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnsupportedGroup);
    }
    auto u = make_group(GroupKind::U1);
    try {
        poisson_rhs_su2(make_case(PositionFunction::gaussian(u, 1.0), {0.3}, q));
        FAIL("u1 accepted by the su2 formula");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnsupportedGroup);
    }
}
