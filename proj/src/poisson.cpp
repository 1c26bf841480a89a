#include "ncf/poisson.hpp"

#include <chrono>
#include <cmath>
#include <numbers>

#include "ncf/error.hpp"

namespace ncf {

namespace {

constexpr double kPi = std::numbers::pi;

bool abelian_catalog(const GroupSpec& g) {
    return g.family() == GroupFamily::U1 || g.family() == GroupFamily::Torus;
}

// j1(x)/x, with its series near 0.
double j1_over_x(double x) {
    if (std::abs(x) < 1e-3) return 1.0 / 3.0 - x * x / 30.0;
    return (std::sin(x) - x * std::cos(x)) / (x * x * x);
}

// j1'(x) = j0(x) - 2 j1(x)/x.
double j1_prime(double x) {
    if (std::abs(x) < 1e-3) return 1.0 / 3.0 - x * x / 10.0;
    return std::sin(x) / x - 2.0 * j1_over_x(x);
}

double j0(double x) {
    if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

// psi sampled once on tensor Gauss-Legendre boxes of order N and N/2 over
// [-R, R]^r; transforms at lattice momenta then cost no further evaluations.
// Same rule and error estimate as ncft on an Abelian group.
class TabulatedTransform {
public:
    TabulatedTransform(const PositionFunction& psi, const QuadratureSpec& quad) : tol_(quad.target_rel_tol) {
        quad.validate();
        const GroupSpec& g = *psi.group();
        const double R = ncft_cutoff(psi, quad);
        std::vector<int> full, coarse;
        for (int i = 0; i < g.dim(); ++i) {
            full.push_back(quad.box_order(i));
            coarse.push_back(std::max(2, quad.box_order(i) / 2));
        }
        full_ = Box(psi, R, full);
        coarse_ = Box(psi, R, coarse);
    }

    cd operator()(const std::vector<int>& n) const {
        QuadResult res;
        res.value = full_.transform(n);
        res.scale = full_.scale;
        res.error = std::abs(res.value - coarse_.transform(n));
        require_resolved(res, tol_, "ncft");
        return res.value;
    }

private:
    struct Box {
        std::vector<Rule> rules;
        std::vector<cd> values;  // weight times psi, row-major
        double scale = 0.0;

        Box() = default;
        Box(const PositionFunction& psi, double R, const std::vector<int>& orders) {
            const int r = static_cast<int>(orders.size());
            for (int o : orders) rules.push_back(gauss_legendre(o, -R, R));
            std::vector<int> idx(r, 0);
            AlgebraVector X = AlgebraVector::zero(r);
            while (true) {
                double w = 1.0;
                for (int i = 0; i < r; ++i) {
                    X.c[i] = rules[i].nodes[idx[i]];
                    w *= rules[i].weights[idx[i]];
                }
                values.push_back(w * psi(X));
                scale += std::abs(values.back());
                if (!advance(idx, orders)) break;
            }
        }

        cd transform(const std::vector<int>& n) const {
            const int r = static_cast<int>(rules.size());
            std::vector<std::vector<cd>> phase(r);
            std::vector<int> orders(r);
            for (int i = 0; i < r; ++i) {
                orders[i] = static_cast<int>(rules[i].nodes.size());
                for (double x : rules[i].nodes) phase[i].push_back(std::polar(1.0, -n[i] * x));
            }
            std::vector<int> idx(r, 0);
            cd s = 0.0;
            for (const cd& v : values) {
                cd e = 1.0;
                for (int i = 0; i < r; ++i) e *= phase[i][idx[i]];
                s += e * v;
                advance(idx, orders);
            }
            return s;
        }

        static bool advance(std::vector<int>& idx, const std::vector<int>& orders) {
            for (int i = static_cast<int>(idx.size()) - 1; i >= 0; --i) {
                if (++idx[i] < orders[i]) return true;
                idx[i] = 0;
            }
            return false;
        }
    };

    double tol_;
    Box full_, coarse_;
};

} // namespace

RadialTransform::RadialTransform(const PositionFunction& psi, const QuadratureSpec& quad) {
    const int order = quad.radial_order;
    if (psi.group()->family() != GroupFamily::SU2 || !psi.radial())
        throw Error(ErrorCode::NotClassFunction, "radial transform needs a radial su2 function");
    cutoff = ncft_cutoff(psi, quad);
    const Rule q = gauss_legendre(order, 0.0, cutoff);
    r_ = q.nodes;
    for (int i = 0; i < order; ++i) {
        w_.push_back(4.0 * kPi * q.weights[i] * std::pow(std::sin(r_[i]), 2));
        psi_.push_back((*psi.radial())(r_[i]));
    }
}

cd RadialTransform::F(double s) const {
    cd t = 0.0;
    for (std::size_t i = 0; i < r_.size(); ++i) t += w_[i] * j0(s * r_[i]) * psi_[i];
    return t;
}

cd RadialTransform::dF_over_s(double s) const {
    cd t = 0.0;
    for (std::size_t i = 0; i < r_.size(); ++i) t -= w_[i] * r_[i] * r_[i] * j1_over_x(s * r_[i]) * psi_[i];
    return t;
}

cd RadialTransform::d2F(double s) const {
    cd t = 0.0;
    for (std::size_t i = 0; i < r_.size(); ++i) t -= w_[i] * r_[i] * r_[i] * j1_prime(s * r_[i]) * psi_[i];
    return t;
}

cd RadialTransform::d2u(double m, double rho) const {
    const double s2 = m * m + rho * rho;
    if (s2 < 1e-24) return d2F(0.0);
    const double s = std::sqrt(s2);
    return d2F(s) * (m * m / s2) + dF_over_s(s) * (rho * rho / s2);
}

cd poisson_lhs(const PoissonCase& c) {
    const BranchWindow w = c.window ? *c.window : auto_window(c.psi, c.X, c.window_tol);
    return project_position(c.psi, c.X, w, c.window_tol);
}

AbelianSpectrum AbelianSpectrum::compute(const PositionFunction& psi, const QuadratureSpec& quad) {
    const GroupSpec& g = *psi.group();
    if (!abelian_catalog(g)) throw Error(ErrorCode::UnsupportedGroup, "Abelian Poisson formula on " + g.name());
    const int r = g.dim();
    const TabulatedTransform F(psi, quad);
    // Spectral cutoff: first K at which two consecutive modes along every
    // axis fall below 1e-15 of the zero mode.
    const double f0 = std::abs(F(std::vector<int>(r, 0)));
    const int kmax = 512;
    int K = -1;
    for (int k = 1; k < kmax && K < 0; ++k) {
        bool small = true;
        for (int i = 0; i < r && small; ++i) {
            std::vector<int> a(r, 0), b(r, 0);
            a[i] = k;
            b[i] = k + 1;
            small = std::abs(F(a)) <= 1e-15 * f0 && std::abs(F(b)) <= 1e-15 * f0;
        }
        if (small) K = k;
    }
    if (K < 0) throw Error(ErrorCode::SpectralCutoffTooSmall, "transform has not decayed by the spectral limit");
    AbelianSpectrum out;
    out.group = psi.group();
    out.K = K;
    std::vector<int> n(r, -K);
    while (true) {
        out.values.push_back(F(n));
        int i = r - 1;
        for (; i >= 0; --i) {
            if (++n[i] <= K) break;
            n[i] = -K;
        }
        if (i < 0) break;
    }
    return out;
}

cd AbelianSpectrum::rhs_at(const AlgebraVector& X) const {
    check_dim(*group, X);
    const int r = group->dim();
    // Per-axis phase tables e^{i n x_i}.
    std::vector<std::vector<cd>> phase(r);
    for (int i = 0; i < r; ++i)
        for (int n = -K; n <= K; ++n) phase[i].push_back(std::polar(1.0, n * X[i]));
    std::vector<int> n(r, -K);
    cd sum = 0.0;
    for (const cd& v : values) {
        cd e = 1.0;
        for (int i = 0; i < r; ++i) e *= phase[i][n[i] + K];
        sum += e * v;
        for (int i = r - 1; i >= 0; --i) {
            if (++n[i] <= K) break;
            n[i] = -K;
        }
    }
    return sum / std::pow(2.0 * kPi, r);
}

cd poisson_rhs_u1(const PoissonCase& c, int* K_out) {
    const AbelianSpectrum s = AbelianSpectrum::compute(c.psi, c.quad);
    if (K_out) *K_out = s.K;
    return s.rhs_at(c.X);
}

cd poisson_rhs_su2(const PoissonCase& c, int* M_out, double* plane_out) {
    const GroupSpec& g = *c.psi.group();
    if (g.family() != GroupFamily::SU2) throw Error(ErrorCode::UnsupportedGroup, "su2 Poisson formula on " + g.name());
    check_dim(g, c.X);
    const double rX = c.X.norm();
    const double sn = std::sin(rX);
    if (std::abs(sn) <= 1e-8) throw Error(ErrorCode::OnSingularSet, "sin||X|| vanishes");
    const Eigen::Vector3d u = c.X.c / rX;

    std::optional<RadialTransform> rt;
    if (c.psi.radial()) rt.emplace(c.psi, c.quad);

    // Directional second derivative at p = m u + rho e.
    std::function<cd(double, double, double)> d2u;
    double f_scale = 0.0;
    if (c.derivative == DerivativeMode::Analytic) {
        if (!rt) throw Error(ErrorCode::NotClassFunction, "analytic derivative needs a radial function");
        d2u = [&](double m, double rho, double) { return rt->d2u(m, rho); };
    }

    // Plane radius from the decay of F along a ray.
    auto Fs = [&](double s) {
        if (rt) return rt->F(s);
        return ncft(c.psi, MomentumVector(Eigen::VectorXd(s * u)), c.quad);
    };
    f_scale = std::abs(Fs(0.0));
    double S = 0.0;
    {
        const double step = 0.25;
        double last = 0.0;
        for (double s = 0.0; s <= 400.0; s += step) {
            double mag = std::abs(Fs(s));
            if (rt) mag = std::max({mag, std::abs(rt->d2F(s)), std::abs(rt->dF_over_s(s))});
            if (mag > 1e-13 * f_scale) last = s;
            if (s > last + 4.0) break;
        }
        S = last + 1.0;
    }
    const int M = c.m_max ? *c.m_max : static_cast<int>(std::ceil(S));
    if (M_out) *M_out = M;
    if (plane_out) *plane_out = S;

    if (c.derivative == DerivativeMode::FiniteDifference) {
        const double h = S * 1e-2;
        d2u = [&, h](double m, double rho, double phi) {
            Eigen::Vector3d e1, e2;
            const Eigen::Vector3d t = std::abs(u.x()) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
            e1 = (t - t.dot(u) * u).normalized();
            e2 = u.cross(e1);
            const Eigen::Vector3d p0 = m * u + rho * (std::cos(phi) * e1 + std::sin(phi) * e2);
            auto F = [&](double t) {
                if (rt) return rt->F((p0 + t * u).norm());
                return ncft(c.psi, MomentumVector(Eigen::VectorXd(p0 + t * u)), c.quad);
            };
            auto five = [&](double hh) {
                return (-F(2 * hh) + 16.0 * F(hh) - 30.0 * F(0.0) + 16.0 * F(-hh) - F(-2 * hh)) / (12.0 * hh * hh);
            };
            const cd coarse = five(h), fine = five(0.5 * h);
            const double err = std::abs(fine - coarse) / 15.0;
            if (err > 1e-6 * f_scale)
                throw Error(ErrorCode::DerivativeUnstable, "Richardson estimates disagree");
            return fine + (fine - coarse) / 15.0;
        };
    }

    QuadratureSpec plane = c.quad;
    plane.cutoff_radius = S;
    // Outer planes carry only a tiny part of the sum; judge their rim
    // against the central plane's peak.
    const double floor = std::abs(d2u(0.0, 0.0, 0.0));
    cd sum = 0.0;
    for (int m = -M; m <= M; ++m) {
        const cd I = integrate_plane([&](double rho, double phi) { return d2u(m, rho, phi); }, plane, 0.0, floor);
        sum += std::polar(1.0, m * rX) * I;
    }
    return -sum / (std::pow(2.0 * kPi, 3) * sn * sn);
}

PoissonResult poisson_generic(const PoissonCase& c) {
    const auto t0 = std::chrono::steady_clock::now();
    const GroupSpec& g = *c.psi.group();
    PoissonResult r;
    if (abelian_catalog(g)) {
        r.rhs = poisson_rhs_u1(c, &r.spectral_cutoff);
    } else if (g.family() == GroupFamily::SU2) {
        r.rhs = poisson_rhs_su2(c, &r.spectral_cutoff, &r.plane_radius);
    } else {
        throw Error(ErrorCode::UnsupportedGroup, "Poisson summation needs u1, a torus or su2");
    }
    r.window = c.window ? *c.window : auto_window(c.psi, c.X, c.window_tol);
    r.lhs = project_position(c.psi, c.X, r.window, c.window_tol);
    r.residual = std::abs(r.lhs - r.rhs);
    r.transform_cutoff = ncft_cutoff(c.psi, c.quad);
    r.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

nlohmann::ordered_json to_json(const PoissonCase& c, const PoissonResult& r, bool with_timing) {
    nlohmann::ordered_json j;
    j["case"] = {{"group", c.psi.group()->name()},
                 {"function", c.psi.label()},
                 {"X", std::vector<double>(c.X.c.data(), c.X.c.data() + c.X.dim())},
                 {"derivative", c.derivative == DerivativeMode::Analytic ? "analytic" : "finite_difference"}};
    j["lhs"] = {{"re", r.lhs.real()}, {"im", r.lhs.imag()}};
    j["rhs"] = {{"re", r.rhs.real()}, {"im", r.rhs.imag()}};
    j["residual"] = r.residual;
    j["quadrature"] = {{"orders", c.quad.to_json()},
                       {"cutoffs",
                        {{"transform", r.transform_cutoff},
                         {"plane", r.plane_radius},
                         {"spectral", r.spectral_cutoff},
                         {"window", {r.window.lo, r.window.hi}}}}};
    if (with_timing) j["wall_time_ms"] = r.wall_time_ms;
    return j;
}

} // namespace ncf
