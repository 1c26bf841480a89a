#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ncf/error.hpp"
#include "ncf/fourier.hpp"
#include "oracles.hpp"

using namespace ncf;
constexpr double pi = std::numbers::pi;

namespace {

double chi(int two_lambda, double r) {
    return std::abs(std::sin(r)) < 1e-12 ? two_lambda + 1.0 : std::sin((two_lambda + 1) * r) / std::sin(r);
}

Eigen::Vector3d random_unit(std::mt19937_64& rng) {
    std::normal_distribution<double> n(0, 1);
    return Eigen::Vector3d(n(rng), n(rng), n(rng)).normalized();
}

} // namespace

TEST_CASE("character coefficients live on two shells") {
    auto g = make_group(GroupKind::SU2);
    auto chi1 = PositionFunction::character(g, 2);
    QuadratureSpec q;
    CHECK(std::abs(fourier_coeff_class(chi1, 3.0, q) - pi * pi / 3) < 1e-12);
    CHECK(std::abs(fourier_coeff_class(chi1, 2.5, q) - pi * pi / 2.5) < 1e-12);
    CHECK(std::abs(fourier_coeff_class(chi1, 1.5, q)) < 1e-12);
    CHECK(std::abs(fourier_coeff_class(chi1, 4.2, q)) < 1e-12);

    // Half-integer spin: the same two-shell pattern, starting at 2 lambda = 1.
    auto half = PositionFunction::character(g, 1);
    CHECK(std::abs(fourier_coeff_class(half, 0.5, q)) < 1e-12);
    CHECK(std::abs(fourier_coeff_class(half, 1.5, q) - pi * pi / 1.5) < 1e-12);
    CHECK(std::abs(fourier_coeff_class(half, 2.9, q) - pi * pi / 2.9) < 1e-12);

    // The direction-resolved rule agrees and does not depend on the direction.
    std::mt19937_64 rng(3);
    for (int t = 0; t < 4; ++t) {
        const MomentumVector p(3.0 * random_unit(rng));
        CHECK(std::abs(fourier_coeff(chi1, p, q) - pi * pi / 3) < 1e-10);
    }
    try {
        fourier_coeff_class(chi1, 0.0, q);
        FAIL("origin accepted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MomentumAtOrigin);
    }
    auto aniso = PositionFunction::from_expr(g, FunctionExpr::parse("x*exp(-r^2)"), Domain::PrincipalBranch);
    try {
        fourier_coeff_class(aniso, 1.0, q);
        FAIL("non-class function accepted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotClassFunction);
    }
}

TEST_CASE("shell coefficients against closed-form character data") {
    auto g = make_group(GroupKind::SU2);
    for (int k = 0; k <= 4; ++k) {
        const auto num = class_shell_coefficients(PositionFunction::character(g, k), Scheme::Symmetric, 10);
        const auto ref = character_shell_data(k);
        for (int j = 0; j < 10; ++j) CHECK(std::abs(num.amplitude[j] - ref.at(j + 0.5) * (j + 0.5)) < 1e-12);
    }
}

TEST_CASE("shell inverse reproduces characters") {
    auto g = make_group(GroupKind::SU2);
    QuadratureSpec q;
    std::mt19937_64 rng(5);
    for (int k = 0; k <= 4; ++k) {
        MomentumFunction phi{character_shell_data(k), {}};
        for (double r : {0.0, 1e-8, 0.4, 1.3, 2.2, 3.0}) {
            const AlgebraVector X(r * random_unit(rng));
            CHECK(std::abs(inverse_series_nostar(phi, g, X, Scheme::Symmetric, q) - chi(k, r)) < 1e-12 * (k + 1));
        }
    }
    // Duflo data decays slowly, so many shells are needed.
    auto chi1 = PositionFunction::character(g, 2);
    MomentumFunction duf{class_shell_coefficients(chi1, Scheme::Duflo, 4000), {}};
    QuadratureSpec loose;
    loose.target_rel_tol = 1e-3;
    for (double r : {0.5, 1.5, 2.5}) {
        const AlgebraVector X{0, r, 0};
        CHECK(std::abs(inverse_series_nostar(duf, g, X, Scheme::Duflo, loose) - chi(2, r)) < 1e-6);
    }
    try {
        inverse_series_nostar(duf, g, {0, 1, 0}, Scheme::Symmetric, q);
        FAIL("scheme mismatch accepted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SchemeMismatch);
    }
    try {
        inverse_series_nostar(MomentumFunction{character_shell_data(2), {}}, g, {0, pi, 0}, Scheme::Symmetric, q);
        FAIL("sin r = 0 accepted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::JacobianZero);
    }
    try {
        inverse_series_nostar(MomentumFunction{PlaneWaveSum::wave(g, Scheme::Symmetric, {0, 0, 1}), {}}, g,
                              {0, 0, 1}, Scheme::Symmetric, q);
        FAIL("plane waves inverted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::RepresentationUnsupported);
    }
}

TEST_CASE("narrow bump tends to the identity coefficient") {
    auto u = make_group(GroupKind::U1);
    QuadratureSpec q;
    q.radial_order = 512;
    auto b = PositionFunction::bump(u, 0.05);
    CHECK(std::abs(fourier_coeff(b, {0}, q) - 1.0) < 1e-10);
    CHECK(std::abs(fourier_coeff(b, {1}, q) - std::exp(-0.05 * 0.05 / 2)) < 1e-8);

    auto g = make_group(GroupKind::SU2);
    auto bs = PositionFunction::bump(g, 0.02);
    for (int j = 0; j <= 3; ++j) CHECK(std::abs(fourier_coeff_class(bs, j + 0.5, q) - 1.0) < 1e-2);
}

TEST_CASE("u(1) coefficients") {
    auto u = make_group(GroupKind::U1);
    QuadratureSpec q;
    auto e1 = PositionFunction::custom(u, [](const AlgebraVector& X) { return std::polar(1.0, X[0]); },
                                       Domain::PrincipalBranch);
    CHECK(std::abs(fourier_coeff(e1, {1}, q) - 2 * pi) < 1e-13);
    CHECK(std::abs(fourier_coeff(e1, {2}, q)) < 1e-13);
    CHECK(fourier_coeff(e1, {0.5}, q) == cd(0.0));

    // exp(cos x) has coefficients 2 pi I_n(1).
    auto f = PositionFunction::from_expr(u, FunctionExpr::parse("exp(cos(x))"), Domain::PrincipalBranch);
    const auto lat = lattice_coefficients(f, 20, q);
    for (int n = -6; n <= 6; ++n) CHECK(std::abs(lat.at({n}) - 2 * pi * std::cyl_bessel_i(std::abs(n), 1.0)) < 1e-13);
    MomentumFunction phi{lat, {}};
    for (double x : {-3.0, -1.0, 0.0, 0.4, 2.9})
        CHECK(std::abs(inverse_series_nostar(phi, u, {x}, Scheme::Symmetric, q) - std::exp(std::cos(x))) < 1e-13);
}

TEST_CASE("transform of Gaussians") {
    auto u = make_group(GroupKind::U1);
    QuadratureSpec q;
    q.radial_order = 256;
    for (double p : {0.0, 0.37, 1.5, 3.0})
        CHECK(std::abs(ncft(PositionFunction::gaussian(u, 0.7), {p}, q) -
                       std::sqrt(2 * pi) * 0.7 * std::exp(-0.49 * p * p / 2)) < 1e-12);

    auto g = make_group(GroupKind::SU2);
    auto psi = PositionFunction::gaussian(g, 0.8);
    QuadratureSpec q3;
    QuadratureSpec q3full;
    q3full.radial_order = 128;
    q3full.theta_order = q3full.phi_order = 48;
    for (double s : {0.0, 0.6, 2.0, 3.7}) {
        const double want = oracle::simpson(
            [&](double r) {
                const double j0 = s * r == 0 ? 1.0 : std::sin(s * r) / (s * r);
                return 4 * pi * std::pow(std::sin(r), 2) * j0 * std::exp(-r * r / (2 * 0.64));
            },
            0.0, 12.0, 20000);
        const MomentumVector p{0, 0, s};
        CHECK(std::abs(ncft(psi, p, q3) - want) < 1e-11);
        CHECK(std::abs(ncft_full(psi, MomentumVector{0, s * 0.6, s * 0.8}, q3full) - want) < 1e-7);
    }
}

TEST_CASE("pairings on both sides") {
    auto u = make_group(GroupKind::U1);
    QuadratureSpec q;
    auto a = PositionFunction::from_expr(u, FunctionExpr::parse("cos(3*x)+sin(x)"), Domain::PrincipalBranch);
    auto b = PositionFunction::from_expr(u, FunctionExpr::parse("exp(cos(x))"), Domain::PrincipalBranch);
    CHECK(parseval_gap(a, b, q) < 1e-12);
    CHECK(std::abs(position_pairing(a, a, q) - 2 * pi) < 1e-13);

    auto g = make_group(GroupKind::SU2);
    for (int k = 0; k <= 3; ++k)
        for (int l = 0; l <= 3; ++l) {
            const cd v = position_pairing(PositionFunction::character(g, k), PositionFunction::character(g, l), q);
            CHECK(std::abs(v - (k == l ? 2 * pi * pi : 0.0)) < 1e-11);
        }
    auto c2 = PositionFunction::character(g, 2);
    CHECK(std::abs(momentum_pairing(c2, c2, q) - 2 * pi * pi) < 1e-9);
}

TEST_CASE("convolution theorem on u(1)") {
    auto u = make_group(GroupKind::U1);
    QuadratureSpec q;
    auto a = PositionFunction::gaussian(u, 0.35, Domain::PrincipalBranch);
    auto b = PositionFunction::from_expr(u, FunctionExpr::parse("exp(cos(x))"), Domain::PrincipalBranch);
    const auto A = lattice_coefficients(a, 24, q), B = lattice_coefficients(b, 24, q);
    for (double x : {0.3, -2.0}) {
        const cd conv = convolve_position(a, b, exp_map(u, {x}), q);
        cd want = 0.0;
        for (auto& [n, v] : A.values) want += v * B.at(n) * std::polar(1.0, n[0] * x);
        CHECK(std::abs(conv - want / (2 * pi)) < 1e-12);
    }
    auto prod = convolve_momentum(MomentumFunction{A, {}}, MomentumFunction{B, {}}, q);
    const cd at = inverse_series_nostar(prod, u, {0.9}, Scheme::Symmetric, q);
    CHECK(std::abs(at - a({0.9}) * b({0.9})) < 1e-11);

    auto t = translate_left(b, {0.5});
    CHECK(std::abs(t({0.2}) - b({0.7})) < 1e-15);
}
