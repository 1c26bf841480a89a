#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "ncf/error.hpp"
#include "ncf/functions.hpp"
#include "oracles.hpp"

using namespace ncf;
constexpr double pi = std::numbers::pi;

TEST_CASE("sampled grid csv round trip and interpolation") {
    SampledGrid g;
    g.axes = {{-1, 1, 3}, {0, 2, 5}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 5; ++j) g.values.push_back(cd(g.axes[0].node(i) + 2 * g.axes[1].node(j), i - j));
    std::stringstream ss;
    g.write_csv(ss);
    CHECK(ss.str().rfind("x,y,re,im\n", 0) == 0);
    const SampledGrid back = SampledGrid::read_csv(ss);
    REQUIRE(back.values.size() == g.values.size());
    for (std::size_t k = 0; k < g.values.size(); ++k) CHECK(back.values[k] == g.values[k]);
    // Multilinear interpolation is exact on the linear real part.
    CHECK(std::abs(back.at({0.3, 1.1}).real() - (0.3 + 2.2)) < 1e-15);
    CHECK(back.at({1.5, 1.0}) == cd(0.0));

    std::stringstream bad("x,re,im\n0,1,0\n0.5,abc,0\n");
    try {
        SampledGrid::read_csv(bad);
        FAIL("bad number accepted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParseError);
    }
    std::stringstream holes("x,y,re,im\n0,0,1,0\n1,0,1,0\n0,1,1,0\n");
    CHECK_THROWS_AS(SampledGrid::read_csv(holes), Error);
    std::stringstream header("x,y\n0,0\n");
    CHECK_THROWS_AS(SampledGrid::read_csv(header), Error);
}

TEST_CASE("builtin families by name") {
    auto g = make_group(GroupKind::SU2);
    auto a = PositionFunction::from_spec(g, "gaussian(0.5)", Domain::WholeAlgebra);
    CHECK(std::abs(a({0.5, 0, 0}) - std::exp(-0.5)) < 1e-15);
    CHECK(a.is_class_function());
    auto c = PositionFunction::from_spec(g, "character(2)", Domain::PrincipalBranch);
    CHECK(std::abs(c({0, 0, 0.7}) - (1 + 2 * std::cos(1.4))) < 1e-14);
    // Character values depend only on the group element.
    CHECK(std::abs(c({0, 0, 0.7 + 2 * pi}) - c({0, 0, 0.7})) < 1e-12);
    auto e = PositionFunction::from_spec(g, "x*y", Domain::WholeAlgebra);
    CHECK(std::abs(e({2, 3, 0}) - 6.0) < 1e-15);
    CHECK_FALSE(e.is_class_function());
    CHECK_THROWS_AS(PositionFunction::from_spec(g, "gaussian(abc)", Domain::WholeAlgebra), Error);
    try {
        PositionFunction::from_spec(g, "character(1.5)", Domain::PrincipalBranch);
        FAIL("fractional 2 lambda accepted");
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::InvalidSpin);
    }
    CHECK_THROWS_AS(PositionFunction::character(make_group(GroupKind::U1), 2), Error);
}

TEST_CASE("bump is normalized to unit Haar integral") {
    auto g = make_group(GroupKind::SU2);
    auto b = PositionFunction::bump(g, 0.3);
    const double mass = oracle::simpson(
        [&](double r) { return 4 * pi * std::pow(std::sin(r), 2) * b({r, 0, 0}).real(); }, 0.0, pi, 4000);
    CHECK(std::abs(mass - 1.0) < 1e-10);
    auto u = make_group("torus2");
    auto bt = PositionFunction::bump(u, 0.4);
    double m2 = 0.0;
    const int n = 400;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m2 += bt({-pi + 2 * pi * (i + 0.5) / n, -pi + 2 * pi * (j + 0.5) / n}).real();
    CHECK(std::abs(m2 * std::pow(2 * pi / n, 2) - 1.0) < 1e-10);
}

TEST_CASE("decay radius and arithmetic") {
    auto u = make_group(GroupKind::U1);
    auto a = PositionFunction::gaussian(u, 1.0);
    const double R = a.decay_radius(1e-17);
    CHECK(std::exp(-R * R / 2) <= 1e-17);
    CHECK(R < 1.2 * std::sqrt(2 * std::log(1e17)));
    auto s = a.scaled(2.0) + PositionFunction::gaussian(u, 0.5);
    CHECK(std::abs(s({1.0}) - (2 * std::exp(-0.5) + std::exp(-2.0))) < 1e-15);
    auto flat = PositionFunction::from_expr(u, FunctionExpr::parse("1"), Domain::WholeAlgebra);
    try {
        flat.decay_radius(1e-17);
        FAIL("constant function has a decay radius");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::CutoffTooSmall);
    }
}
