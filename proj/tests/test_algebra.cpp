#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ncf/error.hpp"
#include "ncf/groups.hpp"
#include "oracles.hpp"

using namespace ncf;
constexpr double pi = std::numbers::pi;

namespace {

AlgebraVector from3(const Eigen::Vector3d& v) { return AlgebraVector{v[0], v[1], v[2]}; }

// Decompose a commutator of 2x2 matrices on t_k = i sigma_k.
Eigen::Vector3d matrix_bracket(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
    Eigen::Matrix2cd A = Eigen::Matrix2cd::Zero(), B = Eigen::Matrix2cd::Zero();
    for (int k = 0; k < 3; ++k) {
        A += oracle::cd(0, a[k]) * oracle::pauli(k);
        B += oracle::cd(0, b[k]) * oracle::pauli(k);
    }
    const Eigen::Matrix2cd C = A * B - B * A;
    Eigen::Vector3d out;
    for (int k = 0; k < 3; ++k) out[k] = ((oracle::pauli(k) * C).trace() / oracle::cd(0, 2)).real();
    return out;
}

} // namespace

TEST_CASE("bracket matches matrix commutators on su2") {
    auto g = make_group(GroupKind::SU2);
    CHECK(bracket(*g, {1, 0, 0}, {1, 0, 0}).norm() == 0.0);
    auto z = bracket(*g, {1, 0, 0}, {0, 1, 0});
    CHECK(z[0] == 0.0);
    CHECK(z[1] == 0.0);
    CHECK(z[2] == -2.0);

    std::mt19937_64 rng(7);
    for (int t = 0; t < 50; ++t) {
        auto a = oracle::random_in_ball(rng, 2.0), b = oracle::random_in_ball(rng, 2.0);
        auto want = matrix_bracket(a, b);
        CHECK((bracket(*g, from3(a), from3(b)).c - want).norm() < 1e-14);
    }
}

TEST_CASE("abelian brackets vanish") {
    auto u = make_group(GroupKind::U1);
    CHECK(bracket(*u, {0.3}, {-1.7}).norm() == 0.0);
    auto t = make_group(GroupKind::Torus, 3);
    CHECK(ad_matrix(*t, {1, 2, 3}).norm() == 0.0);
}

TEST_CASE("ad_matrix reproduces bracket") {
    auto g = make_group(GroupKind::SU2);
    CHECK(ad_matrix(*g, {0, 0, 0}).norm() == 0.0);
    const auto M = ad_matrix(*g, {0, 0, 1});
    const Eigen::Vector3d e1(1, 0, 0);
    const Eigen::Vector3d col = M * e1;
    CHECK(col[0] == 0.0);
    CHECK(col[1] == -2.0);
    CHECK(col[2] == 0.0);
    AlgebraVector X{0.3, -0.2, 0.9}, Y{-1.1, 0.4, 0.25};
    CHECK((ad_matrix(*g, X) * Y.c - bracket(*g, X, Y).c).norm() < 1e-15);
}

TEST_CASE("dimension checks") {
    auto g = make_group(GroupKind::SU2);
    CHECK_THROWS_AS(bracket(*g, {1, 0}, {0, 1, 0}), Error);
    try {
        bracket(*g, {1, 0}, {0, 1, 0});
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InvalidDimension);
    }
}

TEST_CASE("structure constant validation") {
    std::vector<double> bad(27, 0.0);
    bad[(0 * 3 + 1) * 3 + 2] = 1.0;  // no antisymmetric partner
    CHECK_THROWS_AS(GroupSpec("bad", GroupFamily::Generic, 3, 0, bad, {}, {}, JacobianStrategy::Determinant, {}),
                    Error);
    // Non-unimodular 2D algebra [e1, e2] = e2.
    std::vector<double> aff(8, 0.0);
    aff[(0 * 2 + 1) * 2 + 1] = 1.0;
    aff[(1 * 2 + 0) * 2 + 1] = -1.0;
    try {
        GroupSpec("aff", GroupFamily::Generic, 2, 0, aff, {}, {}, JacobianStrategy::Determinant, {});
        FAIL("accepted a non-unimodular algebra");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotUnimodular);
    }
    // Rank/generator mismatch.
    CHECK_THROWS_AS(GroupSpec("t", GroupFamily::Torus, 1, 1, {0.0}, {}, {}, JacobianStrategy::ClosedForm, {}), Error);
}

TEST_CASE("catalog structure constants satisfy Jacobi exactly") {
    // Integer-valued constants, so the sums below are exact in floating point.
    for (auto g : {make_group(GroupKind::U1), make_group(GroupKind::SU2), make_group(GroupKind::Torus, 2)}) {
        const int n = g->dim();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    CHECK(g->c(i, j, k) == -g->c(j, i, k));
                    for (int l = 0; l < n; ++l) {
                        double s = 0;
                        for (int m = 0; m < n; ++m)
                            s += g->c(i, j, m) * g->c(m, k, l) + g->c(j, k, m) * g->c(m, i, l) +
                                 g->c(k, i, m) * g->c(m, j, l);
                        CHECK(s == 0.0);
                    }
                }
    }
}

TEST_CASE("bch identities and matrix-log oracle") {
    auto g = make_group(GroupKind::SU2);
    AlgebraVector X{0.4, -0.3, 1.1};
    CHECK((bch(*g, X, AlgebraVector::zero(3)) - X).norm() < 1e-15);
    CHECK(bch(*g, X, -X).norm() < 1e-15);

    AlgebraVector a{0.1, 0, 0}, b{0, 0.1, 0};
    const Eigen::Vector3d want = oracle::su2_log(oracle::su2_exp(a.c) * oracle::su2_exp(b.c));
    CHECK((bch(*g, a, b).c - want).norm() < 1e-14);

    std::mt19937_64 rng(11);
    for (int t = 0; t < 200; ++t) {
        auto x = oracle::random_in_ball(rng, 1.5), y = oracle::random_in_ball(rng, 1.5);
        const Eigen::Vector3d w = oracle::su2_log(oracle::su2_exp(x) * oracle::su2_exp(y));
        if (w.norm() > pi - 1e-3) continue;
        CHECK((bch(*g, from3(x), from3(y)).c - w).norm() < 1e-12);
    }
}

TEST_CASE("closed-form bch reduces to the principal branch") {
    auto g = make_group(GroupKind::SU2);
    AlgebraVector X{0, 0, 2.0}, Y{0, 0, 2.0};
    auto B = bch(*g, X, Y);
    CHECK(B.norm() < pi);
    CHECK(B[2] == doctest::Approx(4.0 - 2 * pi).epsilon(1e-14));
    try {
        bch(*g, AlgebraVector{0, 0, pi / 2}, AlgebraVector{0, 0, pi / 2});
        FAIL("antipodal composition accepted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::BoundaryConjugacy);
    }
}

TEST_CASE("bch associativity on su2") {
    auto g = make_group(GroupKind::SU2);
    std::mt19937_64 rng(3);
    int checked = 0;
    for (int t = 0; t < 300; ++t) {
        auto x = from3(oracle::random_in_ball(rng, 1.0)), y = from3(oracle::random_in_ball(rng, 1.0)),
             z = from3(oracle::random_in_ball(rng, 1.0));
        auto xy = bch(*g, x, y), yz = bch(*g, y, z);
        auto l = bch(*g, xy, z), r = bch(*g, x, yz);
        if (l.norm() > pi - 1e-2) continue;
        CHECK((l - r).norm() < 1e-10);
        ++checked;
    }
    CHECK(checked > 200);
}

TEST_CASE("series bch against closed form") {
    auto g = make_group(GroupKind::SU2);
    AlgebraVector X{0.02, 0.01, -0.03}, Y{-0.01, 0.025, 0.015};
    CHECK((bch_series(*g, X, Y, 6) - bch_closed(*g, X, Y)).norm() < 1e-11);
    // Abelian: the series is exact at first order.
    auto t = make_group(GroupKind::Torus, 2);
    CHECK((bch_series(*t, {1.0, 2.0}, {3.0, -1.0}, 6).c - Eigen::Vector2d(4.0, 1.0)).norm() == 0.0);
}

TEST_CASE("series bch error decays with the truncation order") {
    // The truncation error is the first omitted homogeneous degree. For su(2)
    // the degree-k+1 part can vanish identically, in which case the next
    // degree dominates; measured ratios under halving are either 2^(k+1) or
    // 2^(k+2), each within 20%.
    auto g = make_group(GroupKind::SU2);
    AlgebraVector X{0.3, 0.1, -0.05}, Y{-0.1, 0.25, 0.12};
    for (int k = 2; k <= 6; ++k) {
        auto err = [&](double s) { return (bch_series(*g, X * s, Y * s, k) - bch_closed(*g, X * s, Y * s)).norm(); };
        const double ratio = err(0.1) / err(0.05);
        const double lo = std::pow(2.0, k + 1), hi = std::pow(2.0, k + 2);
        INFO("order " << k << " ratio " << ratio);
        const bool matches = std::abs(ratio / lo - 1) < 0.2 || std::abs(ratio / hi - 1) < 0.2;
        CHECK(matches);
    }
}

TEST_CASE("series mode refuses inputs outside its domain") {
    auto g = std::make_shared<const GroupSpec>(
        make_group(GroupKind::SU2)->with_bch({BchStrategy::Kind::Series, 6, 1e-2}));
    CHECK_NOTHROW(bch(*g, {0.1, 0, 0}, {0, 0.1, 0}));
    try {
        bch(*g, {2.0, 0, 0}, {0, 2.0, 0});
        FAIL("series accepted large inputs");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SeriesOutOfDomain);
    }
}

TEST_CASE("jacobian closed form, determinant mode, evenness") {
    auto g = make_group(GroupKind::SU2);
    CHECK(jacobian(*g, AlgebraVector::zero(3)) == 1.0);
    CHECK(jacobian_determinant(*g, AlgebraVector::zero(3)) == 1.0);
    CHECK(jacobian_determinant(*g, {0, 0, pi / 2}) == doctest::Approx(4 / (pi * pi)).epsilon(1e-13));
    auto u = make_group(GroupKind::U1);
    CHECK(jacobian(*u, {2.7}) == 1.0);
    std::mt19937_64 rng(5);
    for (int t = 0; t < 200; ++t) {
        auto x = from3(oracle::random_in_ball(rng, pi));
        const double r = x.norm();
        const double want = std::pow(std::sin(r) / r, 2);
        CHECK(std::abs(jacobian_determinant(*g, x) - want) < 1e-12);
        CHECK(std::abs(jacobian_determinant(*g, x) - jacobian_determinant(*g, -x)) < 1e-12);
    }
}

TEST_CASE("torus basis and logarithm enumeration") {
    auto g = make_group(GroupKind::SU2);
    auto tb = torus_basis_at(*g, {0, 0, 1});
    CHECK(tb.kappa == 1.0);
    CHECK((tb.basis[0].c - Eigen::Vector3d(0, 0, 1)).norm() == 0.0);
    const Eigen::Matrix2cd e = oracle::su2_exp(2 * pi * tb.basis[0].c);
    CHECK((e - Eigen::Matrix2cd::Identity()).norm() < 1e-13);

    auto u = make_group(GroupKind::U1);
    auto tu = torus_basis_at(*u, {0.3});
    CHECK(tu.kappa == 0.3);
    CHECK(tu.basis[0][0] == 1.0);

    try {
        torus_basis_at(*g, AlgebraVector::zero(3));
        FAIL("identity accepted");
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::DegenerateElement);
    }

    auto logs = logs_of(*g, {0, 0, 1}, {-1, 1});
    REQUIRE(logs.size() == 3);
    CHECK(logs[0][2] == doctest::Approx(1 - 2 * pi));
    CHECK(logs[1][2] == 1.0);
    CHECK(logs[2][2] == doctest::Approx(1 + 2 * pi));
    CHECK(logs_of(*u, {0.5}, {0, 0}).size() == 1);

    AlgebraVector X{0.3, -0.7, 0.4};
    const Eigen::Matrix2cd target = oracle::su2_exp(X.c);
    for (auto& Y : logs_of(*g, X, {-3, 3})) CHECK((oracle::su2_exp(Y.c) - target).norm() < 1e-12);

    auto t2 = make_group(GroupKind::Torus, 2);
    CHECK(logs_of(*t2, {0.1, 0.2}, {-1, 1}).size() == 9);
}

TEST_CASE("group spec json roundtrip") {
    auto g = make_group(GroupKind::SU2);
    auto j = g->to_json();
    auto h = GroupSpec::from_json(nlohmann::json::parse(j.dump()));
    CHECK(h.dim() == 3);
    CHECK(h.rank() == 1);
    CHECK(h.family() == GroupFamily::SU2);
    CHECK(h.structure_constants() == g->structure_constants());
    CHECK(h.to_json().dump() == j.dump());
    CHECK_THROWS_AS(GroupSpec::from_json(nlohmann::json::parse(R"({"name":"x"})")), Error);
}
