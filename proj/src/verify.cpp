#include "ncf/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

#include "ncf/error.hpp"
#include "ncf/fourier.hpp"
#include "ncf/poisson.hpp"
#include "ncf/starprod.hpp"
#include "ncf/waves.hpp"

namespace ncf {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHaarVolume = 2.0 * kPi * kPi;

using Rng = std::mt19937_64;

AlgebraVector random_direction(Rng& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Eigen::VectorXd v(3);
    do {
        v << n(rng), n(rng), n(rng);
    } while (v.norm() < 1e-3);
    return AlgebraVector(v / v.norm());
}

AlgebraVector random_in_ball(Rng& rng, double R) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return random_direction(rng) * (R * std::cbrt(u(rng)));
}

// Unit vector orthogonal to u.
Eigen::VectorXd orthogonal_to(const Eigen::VectorXd& u, Rng& rng) {
    Eigen::VectorXd v = random_direction(rng).c;
    v -= v.dot(u) * u;
    return v.normalized();
}

struct Trig {
    std::vector<cd> a;  // modes -deg..deg
    int deg = 0;
    cd operator()(double x) const {
        cd s = 0.0;
        for (int n = -deg; n <= deg; ++n) s += a[n + deg] * std::polar(1.0, n * x);
        return s;
    }
};

Trig random_trig(Rng& rng, int deg) {
    std::normal_distribution<double> n(0.0, 1.0);
    Trig t;
    t.deg = deg;
    for (int k = -deg; k <= deg; ++k) t.a.push_back(cd(n(rng), n(rng)));
    return t;
}

PositionFunction trig_function(const GroupRef& u1, const Trig& t) {
    return PositionFunction::custom(
        u1, [t](const AlgebraVector& X) { return t(X[0]); }, Domain::PrincipalBranch, std::nullopt, nullptr, "trig");
}

QuadratureSpec spec(const VerifyOptions& opt, int radial, int angular, double tol) {
    QuadratureSpec q;
    q.radial_order = opt.quad_radial.value_or(radial);
    q.theta_order = q.phi_order = opt.quad_angular.value_or(angular);
    q.target_rel_tol = tol;
    return q;
}

void note_quad(nlohmann::ordered_json* meta, int criterion, const QuadratureSpec& q) {
    if (meta) (*meta)["c" + std::to_string(criterion)] = q.to_json();
}

// criterion 1
std::vector<VerificationCase> character_coefficients(const VerifyOptions& opt, nlohmann::ordered_json* meta) {
    const auto g = make_group(GroupKind::SU2);
    const QuadratureSpec q = spec(opt, 64, 24, 1e-8);
    note_quad(meta, 1, q);
    std::vector<VerificationCase> out;
    for (int lam = 0; lam <= 2; ++lam) {
        const auto chi = PositionFunction::character(g, 2 * lam);
        const double lo = 2.0 * lam, hi = 2.0 * lam + 2.0;
        double worst_in = 0.0, at_worst = 0.0, exp_worst = 0.0;
        for (int k = 0; k < 12; ++k) {
            const double p = lo + (k + 0.5) * (hi - lo) / 12.0;
            const double v = fourier_coeff_class(chi, p, q).real();
            const double want = kPi * kPi / p;
            const double rel = std::abs(v - want) / want;
            if (rel >= worst_in) {
                worst_in = rel;
                at_worst = v;
                exp_worst = want;
            }
        }
        out.push_back(make_case("c1.lambda" + std::to_string(lam) + ".inside", 1, exp_worst, at_worst, worst_in, 1e-8,
                                "character coefficient equals pi^2/|p| on the shells 2l <= |p| < 2l+2"));
        std::vector<double> outside;
        for (int k = 0; k < 6 && lam > 0; ++k) outside.push_back(0.05 + (k + 0.5) * (lo - 0.05) / 6.0);
        while (outside.size() < 12) {
            const int k = static_cast<int>(outside.size());
            outside.push_back(hi + (k + 0.5) * 0.5);
        }
        double worst_out = 0.0;
        for (double p : outside) worst_out = std::max(worst_out, std::abs(fourier_coeff_class(chi, p, q)));
        out.push_back(make_case("c1.lambda" + std::to_string(lam) + ".outside", 1, 0.0, worst_out, worst_out, 1e-8,
                                "character coefficient vanishes off its shells"));
    }
    return out;
}

// Samples of the no-star inverse of shell data at 20 radii against a target.
double shell_roundtrip_error(const MomentumFunction& data, Scheme scheme, const std::function<double(double)>& target,
                             const QuadratureSpec& q, Rng& rng, double* sup_out = nullptr) {
    const auto g = make_group(GroupKind::SU2);
    double err = 0.0, sup = 0.0;
    for (int k = 0; k < 20; ++k) {
        const double r = (k + 0.5) * kPi / 20.0;
        const AlgebraVector X = random_direction(rng) * r;
        const cd v = inverse_series_nostar(data, g, X, scheme, q);
        err = std::max(err, std::abs(v - target(r)));
        sup = std::max(sup, std::abs(target(r)));
    }
    if (sup_out) *sup_out = sup;
    return err / sup;
}

// criterion 2
std::vector<VerificationCase> character_roundtrip(const VerifyOptions& opt, nlohmann::ordered_json* meta) {
    Rng rng(opt.seed + 2);
    QuadratureSpec q = spec(opt, 64, 24, 1e-4);
    note_quad(meta, 2, q);
    const MomentumFunction data{character_shell_data(2), {}};
    const double rel = shell_roundtrip_error(
        data, Scheme::Symmetric, [](double r) { return character_radial(2, r); }, q, rng);
    return {make_case("c2.chi1_roundtrip", 2, 0.0, rel, rel, 1e-4,
                      "no-star inverse of the character shell data gives back chi_1")};
}

// criterion 3
std::vector<VerificationCase> bch_consistency(const VerifyOptions& opt, nlohmann::ordered_json*) {
    Rng rng(opt.seed + 3);
    const auto g = make_group(GroupKind::SU2);
    double worst_rep = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const AlgebraVector X = random_in_ball(rng, 3.0);
        const AlgebraVector Y = random_in_ball(rng, 3.0);
        AlgebraVector Z;
        try {
            Z = bch(*g, X, Y);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::BoundaryConjugacy) continue;
            throw;
        }
        for (int k = 1; k <= 4; ++k) {
            const SpinLabel lam(k);
            const Eigen::MatrixXcd lhs = spin_rep(lam, Z);
            const Eigen::MatrixXcd rhs = spin_rep(lam, X) * spin_rep(lam, Y);
            worst_rep = std::max(worst_rep, (lhs - rhs).cwiseAbs().maxCoeff());
        }
    }
    double worst_series = 0.0;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 1000; ++t) {
        const double total = 0.5 * std::sqrt(u(rng));
        const double split = u(rng);
        const AlgebraVector X = random_direction(rng) * (total * split);
        const AlgebraVector Y = random_direction(rng) * (total * (1.0 - split));
        const AlgebraVector a = bch_series(*g, X, Y, 6);
        const AlgebraVector b = bch_closed(*g, X, Y);
        worst_series = std::max(worst_series, (a.c - b.c).norm());
    }
    return {make_case("c3.spin_rep_homomorphism", 3, 0.0, worst_rep, worst_rep, 1e-10,
                      "spin representations compose along the BCH product"),
            make_case("c3.series_order6", 3, 0.0, worst_series, worst_series, 1e-10,
                      "degree-6 BCH series agrees with the closed form for ||X||+||Y|| <= 0.5")};
}

// criterion 4
std::vector<VerificationCase> jacobian_checks(const VerifyOptions& opt, nlohmann::ordered_json*) {
    Rng rng(opt.seed + 4);
    const auto g = make_group(GroupKind::SU2);
    double worst = 0.0, even = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const AlgebraVector X = random_in_ball(rng, 3.0);
        worst = std::max(worst, std::abs(jacobian_determinant(*g, X) - jacobian(*g, X)));
        even = std::max({even, std::abs(jacobian(*g, X) - jacobian(*g, -X)),
                         std::abs(jacobian_determinant(*g, X) - jacobian_determinant(*g, -X))});
    }
    const AlgebraVector O = AlgebraVector::zero(3);
    const double j0 = std::max(std::abs(jacobian(*g, O) - 1.0), std::abs(jacobian_determinant(*g, O) - 1.0));
    return {make_case("c4.determinant_vs_closed", 4, 0.0, worst, worst, 1e-12,
                      "det((1 - e^{-ad X})/ad X) equals sin^2|X|/|X|^2"),
            make_case("c4.origin", 4, 1.0, jacobian(*g, O), j0, 0.0, "J(0) = 1"),
            make_case("c4.evenness", 4, 0.0, even, even, 1e-12, "J(-X) = J(X)")};
}

// criterion 5
std::vector<VerificationCase> abelian_poisson(const VerifyOptions& opt, nlohmann::ordered_json* meta) {
    Rng rng(opt.seed + 5);
    std::uniform_real_distribution<double> ux(-kPi, kPi);
    QuadratureSpec q = spec(opt, 256, 24, 1e-8);
    note_quad(meta, 5, q);
    std::vector<VerificationCase> out;
    const auto u1 = make_group(GroupKind::U1);
    for (double sigma : {0.5, 1.0, 2.0}) {
        const auto psi = PositionFunction::gaussian(u1, sigma);
        const AbelianSpectrum spectrum = AbelianSpectrum::compute(psi, q);
        double worst = 0.0;
        for (int k = 0; k < 20; ++k) {
            const AlgebraVector X{ux(rng)};
            const cd lhs = project_position(psi, X, auto_window(psi, X), 1e-12);
            worst = std::max(worst, std::abs(lhs - spectrum.rhs_at(X)));
        }
        char id[64];
        std::snprintf(id, sizeof id, "c5.u1.sigma%.1f", sigma);
        out.push_back(make_case(id, 5, 0.0, worst, worst, 1e-10,
                                "sum_n psi(x + 2 pi n) = (1/2 pi) sum_k e^{ikx} F[psi](k)"));
    }
    const auto t2 = make_group(GroupKind::Torus, 2);
    const double s1 = 0.8, s2 = 1.2;
    const auto psi = PositionFunction::custom(
        t2,
        [s1, s2](const AlgebraVector& X) {
            return cd(std::exp(-X[0] * X[0] / (2 * s1 * s1) - X[1] * X[1] / (2 * s2 * s2)));
        },
        Domain::WholeAlgebra, std::nullopt, [s2](double R) { return std::exp(-R * R / (2 * s2 * s2)); },
        "product gaussian");
    const AbelianSpectrum spectrum = AbelianSpectrum::compute(psi, q);
    double worst = 0.0;
    for (int k = 0; k < 5; ++k) {
        const AlgebraVector X{ux(rng), ux(rng)};
        const cd lhs = project_position(psi, X, auto_window(psi, X), 1e-12);
        worst = std::max(worst, std::abs(lhs - spectrum.rhs_at(X)));
    }
    out.push_back(make_case("c5.torus2.product", 5, 0.0, worst, worst, 1e-10,
                            "lattice Poisson summation on the 2-torus"));
    return out;
}

// criterion 6
std::vector<VerificationCase> su2_poisson(const VerifyOptions& opt, nlohmann::ordered_json* meta) {
    Rng rng(opt.seed + 6);
    const auto g = make_group(GroupKind::SU2);
    QuadratureSpec q = spec(opt, 128, 8, 1e-8);
    note_quad(meta, 6, q);
    std::vector<VerificationCase> out;
    for (double sigma : {0.4, 0.6, 0.8}) {
        double worst = 0.0;
        for (double r : {0.5, 1.0, 1.5, 2.0, 2.5}) {
            PoissonCase c{PositionFunction::gaussian(g, sigma), random_direction(rng) * r, std::nullopt, q, DerivativeMode::Analytic, std::nullopt, 1e-12};
            const PoissonResult res = poisson_generic(c);
            worst = std::max(worst, res.residual / std::abs(res.lhs));
        }
        char id[64];
        std::snprintf(id, sizeof id, "c6.su2.sigma%.1f", sigma);
        out.push_back(make_case(id, 6, 0.0, worst, worst, 1e-3,
                                "branch sum of psi equals the plane-integral side of the su2 Poisson formula"));
    }
    double worst = 0.0;
    const auto psi = PositionFunction::gaussian(g, 0.3);
    for (double r : {0.5, 1.0}) {
        PoissonCase c{psi, random_direction(rng) * r, std::nullopt, q, DerivativeMode::Analytic, std::nullopt, 1e-12};
        const cd rhs = poisson_rhs_su2(c);
        const cd want = psi(c.X);
        worst = std::max(worst, std::abs(rhs - want) / std::abs(want));
    }
    out.push_back(make_case("c6.single_branch", 6, 0.0, worst, worst, 1e-3,
                            "a single-branch psi is reproduced by the right-hand side"));
    return out;
}

// criterion 7
std::vector<VerificationCase> parseval(const VerifyOptions& opt, nlohmann::ordered_json* meta) {
    Rng rng(opt.seed + 7);
    const auto u1 = make_group(GroupKind::U1);
    QuadratureSpec qu = spec(opt, 64, 24, 1e-8);
    note_quad(meta, 7, qu);
    double worst_trig = 0.0;
    for (int deg = 0; deg <= 8; ++deg) {
        const auto a = trig_function(u1, random_trig(rng, deg));
        const auto b = trig_function(u1, random_trig(rng, deg));
        const double scale = std::sqrt(std::abs(position_pairing(a, a, qu) * position_pairing(b, b, qu)));
        worst_trig = std::max(worst_trig, parseval_gap(a, b, qu) / scale);
    }
    const auto g = make_group(GroupKind::SU2);
    double worst_pos = 0.0, worst_mom = 0.0;
    for (int l = 0; l <= 4; ++l)
        for (int m = 0; m <= 4; ++m) {
            const auto a = PositionFunction::character(g, l);
            const auto b = PositionFunction::character(g, m);
            const double want = l == m ? kHaarVolume : 0.0;
            worst_pos = std::max(worst_pos, std::abs(position_pairing(a, b, qu) - want) / kHaarVolume);
            worst_mom = std::max(worst_mom, std::abs(momentum_pairing(a, b, qu) - want) / kHaarVolume);
        }
    return {make_case("c7.u1_trig", 7, 0.0, worst_trig, worst_trig, 1e-12,
                      "Haar pairing equals the lattice pairing of the coefficients"),
            make_case("c7.characters.position", 7, 0.0, worst_pos, worst_pos, 1e-6,
                      "<chi_l|chi_m> = 2 pi^2 delta_lm"),
            make_case("c7.characters.momentum", 7, 0.0, worst_mom, worst_mom, 1e-6,
                      "momentum-side pairing of character coefficients = 2 pi^2 delta_lm")};
}

// criterion 8
std::vector<VerificationCase> convolution(const VerifyOptions& opt, nlohmann::ordered_json* meta) {
    Rng rng(opt.seed + 8);
    const auto u1 = make_group(GroupKind::U1);
    QuadratureSpec qu = spec(opt, 64, 24, 1e-8);
    std::uniform_real_distribution<double> ux(-kPi, kPi);

    const Trig ta = random_trig(rng, 8), tb = random_trig(rng, 8);
    const auto a = trig_function(u1, ta), b = trig_function(u1, tb);
    const MomentumFunction A{lattice_coefficients(a, 8, qu), {}};
    const MomentumFunction B{lattice_coefficients(b, 8, qu), {}};
    const MomentumFunction AB = convolve_momentum(A, B, qu);
    double worst_mom = 0.0;
    for (int k = 0; k < 20; ++k) {
        const AlgebraVector X{ux(rng)};
        const cd lhs = inverse_series_nostar(AB, u1, X, Scheme::Symmetric, qu);
        worst_mom = std::max(worst_mom, std::abs(lhs - ta(X[0]) * tb(X[0])));
    }
    const auto conv = PositionFunction::custom(
        u1,
        [&](const AlgebraVector& X) { return convolve_position(a, b, exp_map(u1, X), qu); },
        Domain::PrincipalBranch);
    double worst_pos = 0.0;
    for (int n = -10; n <= 10; ++n) {
        const MomentumVector p{static_cast<double>(n)};
        const cd lhs = fourier_coeff(conv, p, qu);
        const cd rhs = fourier_coeff(a, p, qu) * fourier_coeff(b, p, qu);
        worst_pos = std::max(worst_pos, std::abs(lhs - rhs));
    }

    const auto g = make_group(GroupKind::SU2);
    QuadratureSpec qs = spec(opt, 40, 20, 1e-6);
    note_quad(meta, 8, qs);
    double worst_su2 = 0.0;
    std::vector<AlgebraVector> pts;
    for (int k = 0; k < 10; ++k) pts.push_back(random_in_ball(rng, kPi));
    for (int l = 0; l <= 2; ++l)
        for (int m = 0; m <= 2; ++m) {
            const auto cl = PositionFunction::character(g, l);
            const auto cm = PositionFunction::character(g, m);
            for (auto& X : pts) {
                const cd v = convolve_position(cl, cm, exp_map(g, X), qs);
                const double want = l == m ? kHaarVolume / (l + 1) * character_radial(l, X.norm()) : 0.0;
                worst_su2 = std::max(worst_su2, std::abs(v - want) / kHaarVolume);
            }
        }
    return {make_case("c8.u1.momentum_convolution", 8, 0.0, worst_mom, worst_mom, 1e-10,
                      "inverse of a momentum convolution is the product of inverses"),
            make_case("c8.u1.position_convolution", 8, 0.0, worst_pos, worst_pos, 1e-10,
                      "coefficients of a group convolution are products of coefficients"),
            make_case("c8.su2.characters", 8, 0.0, worst_su2, worst_su2, 1e-4,
                      "chi_l * chi_m = delta_lm (2 pi^2/(2l+1)) chi_l")};
}

// criterion 9
std::vector<VerificationCase> duflo(const VerifyOptions& opt, nlohmann::ordered_json* meta) {
    Rng rng(opt.seed + 9);
    const auto g = make_group(GroupKind::SU2);
    QuadratureSpec q = spec(opt, 64, 24, 1e-4);
    note_quad(meta, 9, q);
    const int shells = 4000;
    const MomentumFunction sym{character_shell_data(2), {}};
    const MomentumFunction duf{class_shell_coefficients(PositionFunction::character(g, 2), Scheme::Duflo, shells), {}};
    double err = 0.0, sup = 0.0;
    for (int k = 0; k < 20; ++k) {
        const double r = (k + 0.5) * kPi / 20.0;
        const AlgebraVector X = random_direction(rng) * r;
        const cd a = inverse_series_nostar(sym, g, X, Scheme::Symmetric, q);
        const cd b = inverse_series_nostar(duf, g, X, Scheme::Duflo, q);
        err = std::max(err, std::abs(a - b));
        sup = std::max(sup, std::abs(a));
    }
    double worst_pw = 0.0;
    for (int t = 0; t < 200; ++t) {
        const AlgebraVector X = random_in_ball(rng, 3.0);
        const MomentumVector p(random_in_ball(rng, 5.0).c);
        const cd s = planewave_eval(PlaneWaveSum::wave(g, Scheme::Symmetric, X), p);
        const cd d = planewave_eval(PlaneWaveSum::wave(g, Scheme::Duflo, X), p);
        const double r = X.norm();
        const cd want = s * (r / std::sin(r));
        worst_pw = std::max(worst_pw, std::abs(d - want) / std::abs(want));
    }
    return {make_case("c9.duflo_vs_symmetric_inverse", 9, 0.0, err / sup, err / sup, 1e-4,
                      "Duflo and symmetric no-star inverses reconstruct the same chi_1"),
            make_case("c9.planewave_factor", 9, 0.0, worst_pw, worst_pw, 4e-16,
                      "Duflo plane wave = symmetric plane wave times J^{-1/2}")};
}

// Max over N' in [N, 2N) of |A_N' - target|.
double window_residual(const GroupSpec& g, const AlgebraVector& X, const MomentumVector& p, cd target, int N) {
    double m = 0.0;
    for (int k = N; k < 2 * N; ++k) m = std::max(m, std::abs(cesaro_branch_sum(g, X, p, k) - target));
    return m;
}

// criterion 10
std::vector<VerificationCase> localization(const VerifyOptions& opt, nlohmann::ordered_json*) {
    Rng rng(opt.seed + 10);
    std::uniform_real_distribution<double> u(0.5, 2.5);
    const auto su2 = make_group(GroupKind::SU2);
    const auto u1 = make_group(GroupKind::U1);
    struct Probe {
        GroupRef g;
        AlgebraVector X;
        MomentumVector p;
        bool on;
    };
    std::vector<Probe> probes;
    for (int t = 0; t < 3; ++t) {
        const AlgebraVector X = random_direction(rng) * u(rng);
        const Eigen::VectorXd axis = X.c / X.norm();
        const Eigen::VectorXd perp = orthogonal_to(axis, rng) * 1.3;
        probes.push_back({su2, X, MomentumVector(Eigen::VectorXd(2.0 * axis + perp)), true});
        probes.push_back({su2, X, MomentumVector(Eigen::VectorXd(2.3 * axis + perp)), false});
    }
    probes.push_back({u1, AlgebraVector{0.7}, MomentumVector{3.0}, true});
    probes.push_back({u1, AlgebraVector{0.7}, MomentumVector{0.5}, false});

    double on_worst = 0.0, ratio_worst = 0.5, ratio_excess = 0.0;
    for (auto& pr : probes) {
        const cd target = invariant_wave_reduced(*pr.g, pr.X, pr.p, Scheme::Symmetric);
        double prev = -1.0;
        for (int N = 16; N <= 1024; N *= 2) {
            const double res = window_residual(*pr.g, pr.X, pr.p, target, N);
            if (pr.on) {
                on_worst = std::max(on_worst, res);
            } else if (prev > 0) {
                const double ratio = res / prev;
                const double excess = std::max({0.0, ratio - 1.0, 0.25 - ratio});
                if (std::abs(ratio - 0.5) > std::abs(ratio_worst - 0.5)) ratio_worst = ratio;
                ratio_excess = std::max(ratio_excess, excess);
            }
            prev = res;
        }
    }
    return {make_case("c10.on_support", 10, 0.0, on_worst, on_worst, 1e-12,
                      "averaged branch sums equal the invariant wave on its support"),
            make_case("c10.off_support_rate", 10, 0.5, ratio_worst, ratio_excess, 0.0,
                      "off-support averaged branch sums halve when the window doubles (within a factor 2)")};
}

} // namespace

std::vector<int> suite_criteria(const std::string& suite) {
    if (suite == "core") return {1, 3, 4, 5, 7, 8, 10};
    if (suite == "su2") return {2, 6};
    if (suite == "duflo") return {9};
    if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    throw Error(ErrorCode::InvalidArgument, "unknown suite '" + suite + "' (all, core, su2, duflo)");
}

std::vector<VerificationCase> run_criterion(int criterion, const VerifyOptions& opt, nlohmann::ordered_json* meta) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<VerificationCase> cases;
    switch (criterion) {
    case 1: cases = character_coefficients(opt, meta); break;
    case 2: cases = character_roundtrip(opt, meta); break;
    case 3: cases = bch_consistency(opt, meta); break;
    case 4: cases = jacobian_checks(opt, meta); break;
    case 5: cases = abelian_poisson(opt, meta); break;
    case 6: cases = su2_poisson(opt, meta); break;
    case 7: cases = parseval(opt, meta); break;
    case 8: cases = convolution(opt, meta); break;
    case 9: cases = duflo(opt, meta); break;
    case 10: cases = localization(opt, meta); break;
    default: throw Error(ErrorCode::InvalidArgument, "no criterion " + std::to_string(criterion));
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    for (auto& c : cases) c.wall_time_ms = ms / static_cast<double>(cases.size());
    return cases;
}

VerificationReport run_suite(const std::string& suite, const VerifyOptions& opt) {
    VerificationReport rep;
    rep.suite = suite;
    nlohmann::ordered_json quad = nlohmann::ordered_json::object();
    for (int k : suite_criteria(suite)) {
        std::vector<VerificationCase> cases;
        try {
            cases = run_criterion(k, opt, &quad);
        } catch (const Error& e) {
            // An operational failure inside a criterion counts as a failed case.
            auto c = make_case("c" + std::to_string(k) + ".error", k, 0.0, std::nan(""), std::nan(""), 0.0, e.what());
            cases.push_back(c);
        }
        for (auto& c : cases) {
            if (opt.on_case) opt.on_case(c);
            rep.cases.push_back(std::move(c));
        }
    }
    rep.meta["seed"] = opt.seed;
    rep.meta["quadrature"] = std::move(quad);
    return rep;
}

} // namespace ncf
