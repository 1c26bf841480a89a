#include "ncf/fourier.hpp"

#include <cmath>
#include <numbers>

#include "ncf/error.hpp"

namespace ncf {

namespace {

constexpr double kPi = std::numbers::pi;

int half(int n) { return std::max(2, n / 2); }

double sphj0(double x) {
    if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

// GL on [a, b] at n and n/2 nodes.
QuadResult integrate_1d(const std::function<cd(double)>& f, double a, double b, int n) {
    auto run = [&](int m, double* scale) {
        const Rule q = gauss_legendre(m, a, b);
        cd s = 0.0;
        for (int i = 0; i < m; ++i) {
            const cd v = f(q.nodes[i]);
            s += q.weights[i] * v;
            if (scale) *scale += q.weights[i] * std::abs(v);
        }
        return s;
    };
    QuadResult r;
    r.value = run(n, &r.scale);
    r.error = std::abs(r.value - run(half(n), nullptr));
    return r;
}

// Trapezoid rule over (-pi, pi]^r with the given per-axis orders. Axes
// flagged in shift use nodes moved by half a step.
cd torus_sum(const std::function<cd(const AlgebraVector&)>& f, const std::vector<int>& orders,
             const std::vector<bool>& shift, double* scale) {
    const int r = static_cast<int>(orders.size());
    std::vector<Rule> rules;
    for (int i = 0; i < r; ++i) rules.push_back(periodic_rule(orders[i], -kPi + (shift[i] ? kPi / orders[i] : 0.0)));
    std::vector<int> idx(r, 0);
    cd s = 0.0;
    AlgebraVector X = AlgebraVector::zero(r);
    while (true) {
        double w = 1.0;
        for (int i = 0; i < r; ++i) {
            X.c[i] = rules[i].nodes[idx[i]];
            w *= rules[i].weights[idx[i]];
        }
        const cd v = f(X);
        s += w * v;
        if (scale) *scale += w * std::abs(v);
        int i = r - 1;
        for (; i >= 0; --i) {
            if (++idx[i] < orders[i]) break;
            idx[i] = 0;
        }
        if (i < 0) break;
    }
    return s;
}

// The error estimate compares against the same rule shifted by half a step
// along each axis in turn. Both see aliasing only from modes a full period
// away, so unlike a half-order comparison this stays honest for Fourier
// coefficients with |n| close to order / 2.
QuadResult torus_integral(const std::function<cd(const AlgebraVector&)>& f, const GroupSpec& g,
                          const QuadratureSpec& quad) {
    std::vector<int> orders;
    for (int i = 0; i < g.dim(); ++i) orders.push_back(quad.box_order(i));
    std::vector<bool> shift(g.dim(), false);
    QuadResult r;
    r.value = torus_sum(f, orders, shift, &r.scale);
    for (int i = 0; i < g.dim(); ++i) {
        shift.assign(g.dim(), false);
        shift[i] = true;
        r.error = std::max(r.error, std::abs(r.value - torus_sum(f, orders, shift, nullptr)));
    }
    return r;
}

void require_su2(const GroupSpec& g, const char* what) {
    if (g.family() != GroupFamily::SU2) throw Error(ErrorCode::UnsupportedGroup, std::string(what) + " needs su2");
}

void require_abelian_catalog(const GroupSpec& g, const char* what) {
    if (g.family() != GroupFamily::U1 && g.family() != GroupFamily::Torus)
        throw Error(ErrorCode::UnsupportedGroup, std::string(what) + " needs u1 or a torus");
}

// Orthonormal frame (e1, e2, u) with u along p.
void frame(const Eigen::Vector3d& u, Eigen::Vector3d& e1, Eigen::Vector3d& e2) {
    const Eigen::Vector3d t = std::abs(u.x()) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
    e1 = (t - t.dot(u) * u).normalized();
    e2 = u.cross(e1);
}

} // namespace

cd LatticeCoefficients::at(const std::vector<int>& n) const {
    const auto it = values.find(n);
    return it == values.end() ? cd(0.0) : it->second;
}

cd ShellCoefficients::at(double p_norm) const {
    if (p_norm <= 0) throw Error(ErrorCode::MomentumAtOrigin, "shell data is singular at p = 0");
    const int j = spin_floor(p_norm);
    if (j >= static_cast<int>(amplitude.size())) return 0.0;
    return amplitude[j] / p_norm;
}

double ncft_cutoff(const PositionFunction& psi, const QuadratureSpec& quad) {
    return quad.fixed_cutoff ? quad.cutoff_radius : psi.decay_radius(1e-17);
}

cd ncft(const PositionFunction& psi, const MomentumVector& p, const QuadratureSpec& quad) {
    const GroupSpec& g = *psi.group();
    check_dim(g, p);
    if (g.family() != GroupFamily::SU2 || !psi.radial()) return ncft_full(psi, p, quad);
    quad.validate();
    const double R = ncft_cutoff(psi, quad);
    const double s = p.norm();
    const auto& rad = *psi.radial();
    // 4 pi int sin^2 r j0(s r) psi(r) dr; J r^2 = sin^2 r.
    auto res = integrate_1d(
        [&](double r) { return std::pow(std::sin(r), 2) * sphj0(s * r) * rad(r); }, 0.0, R, quad.radial_order);
    res.value *= 4.0 * kPi;
    res.error *= 4.0 * kPi;
    res.scale *= 4.0 * kPi;
    require_resolved(res, quad.target_rel_tol, "ncft");
    return res.value;
}

cd ncft_full(const PositionFunction& psi, const MomentumVector& p, const QuadratureSpec& quad) {
    const GroupSpec& g = *psi.group();
    check_dim(g, p);
    QuadratureSpec q = quad;
    q.cutoff_radius = ncft_cutoff(psi, quad);
    auto res = integrate_algebra([&](const AlgebraVector& X) { return std::polar(1.0, -pairing(p, X)) * psi(X); }, g,
                                 q, true, Region::CutoffBall);
    require_resolved(res, quad.target_rel_tol, "ncft");
    return res.value;
}

cd fourier_coeff(const PositionFunction& psi, const MomentumVector& p, const QuadratureSpec& quad) {
    const GroupSpec& g = *psi.group();
    check_dim(g, p);
    quad.validate();
    if (g.family() == GroupFamily::U1 || g.family() == GroupFamily::Torus) {
        for (int i = 0; i < p.dim(); ++i)
            if (std::abs(p[i] - std::round(p[i])) > kSupportTol) return 0.0;
        auto res = torus_integral([&](const AlgebraVector& X) { return std::polar(1.0, -pairing(p, X)) * psi(X); },
                                  g, quad);
        require_resolved(res, quad.target_rel_tol, "fourier_coeff");
        return res.value;
    }
    require_su2(g, "fourier_coeff");
    const double s = p.norm();
    if (s == 0.0) throw Error(ErrorCode::MomentumAtOrigin, "su2 coefficients carry 1/||p||");
    const int j = spin_floor(s);
    const Eigen::Vector3d u = p.c / s;
    Eigen::Vector3d e1, e2;
    frame(u, e1, e2);
    auto run = [&](int nr, int nphi, double* scale) {
        const Rule qr = gauss_legendre(nr, 0.0, kPi);
        const Rule qp = periodic_rule(nphi, 0.0);
        cd total = 0.0;
        for (int m = -j; m <= j; ++m) {
            const double ct = m / s;
            const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
            for (int a = 0; a < nr; ++a) {
                const double r = qr.nodes[a];
                cd ring = 0.0;
                for (int b = 0; b < nphi; ++b) {
                    const double ph = qp.nodes[b];
                    const Eigen::Vector3d X = r * (st * std::cos(ph) * e1 + st * std::sin(ph) * e2 + ct * u);
                    ring += qp.weights[b] * psi(AlgebraVector(Eigen::VectorXd(X)));
                }
                const cd v = qr.weights[a] * std::pow(std::sin(r), 2) * std::polar(1.0, -m * r) * ring;
                total += v;
                if (scale) *scale += std::abs(v) / s;
            }
        }
        return total / s;
    };
    QuadResult res;
    res.value = run(quad.radial_order, quad.phi_order, &res.scale);
    res.error = std::abs(res.value - run(half(quad.radial_order), half(quad.phi_order), nullptr));
    require_resolved(res, quad.target_rel_tol, "fourier_coeff");
    return res.value;
}

cd fourier_coeff_class(const PositionFunction& psi, double p_norm, const QuadratureSpec& quad) {
    require_su2(*psi.group(), "fourier_coeff_class");
    if (!psi.radial()) throw Error(ErrorCode::NotClassFunction, "fourier_coeff_class needs a class function");
    if (!(p_norm > 0)) throw Error(ErrorCode::MomentumAtOrigin, "su2 coefficients carry 1/||p||");
    quad.validate();
    const double k = spin_floor(p_norm) + 0.5;
    const auto& rad = *psi.radial();
    auto res = integrate_1d(
        [&](double r) { return std::sin(r) * std::cos(0.5 * r) * std::sin(k * r) * rad(r); }, 0.0, kPi,
        quad.radial_order);
    const double f = 4.0 * kPi / p_norm;
    res.value *= f;
    res.error *= f;
    res.scale *= f;
    require_resolved(res, quad.target_rel_tol, "fourier_coeff_class");
    return res.value;
}

ShellCoefficients class_shell_coefficients(const PositionFunction& psi, Scheme scheme, int shells) {
    require_su2(*psi.group(), "shell coefficients");
    if (!psi.radial()) throw Error(ErrorCode::NotClassFunction, "shell coefficients need a class function");
    if (shells < 1) throw Error(ErrorCode::InvalidArgument, "need at least one shell");
    const auto& rad = *psi.radial();
    const int n = 2 * shells + 128;
    const Rule q = gauss_legendre(n, 0.0, kPi);
    ShellCoefficients out;
    out.scheme = scheme;
    out.amplitude.assign(shells, 0.0);
    for (int i = 0; i < n; ++i) {
        const double r = q.nodes[i];
        const double w = scheme == Scheme::Symmetric ? std::sin(r) : r;
        const cd h = 4.0 * kPi * q.weights[i] * w * std::cos(0.5 * r) * rad(r);
        // sin((j + 1/2) r) by the three-term recurrence in j.
        const double c2 = 2.0 * std::cos(r);
        double prev = -std::sin(0.5 * r), cur = std::sin(0.5 * r);
        for (int j = 0; j < shells; ++j) {
            out.amplitude[j] += h * cur;
            const double next = c2 * cur - prev;
            prev = cur;
            cur = next;
        }
    }
    return out;
}

ShellCoefficients character_shell_data(int twice_lambda) {
    if (twice_lambda < 0) throw Error(ErrorCode::InvalidSpin, "2*lambda must be non-negative");
    ShellCoefficients out;
    out.amplitude.assign(twice_lambda + 2, 0.0);
    out.amplitude[twice_lambda] = kPi * kPi;
    out.amplitude[twice_lambda + 1] = kPi * kPi;
    return out;
}

LatticeCoefficients lattice_coefficients(const PositionFunction& psi, int n_max, const QuadratureSpec& quad) {
    const GroupSpec& g = *psi.group();
    require_abelian_catalog(g, "lattice coefficients");
    LatticeCoefficients out{psi.group(), {}};
    const int r = g.dim();
    std::vector<int> n(r, -n_max);
    while (true) {
        MomentumVector p(Eigen::VectorXd::Zero(r));
        for (int i = 0; i < r; ++i) p.c[i] = n[i];
        out.values[n] = fourier_coeff(psi, p, quad);
        int i = r - 1;
        for (; i >= 0; --i) {
            if (++n[i] <= n_max) break;
            n[i] = -n_max;
        }
        if (i < 0) break;
    }
    return out;
}

namespace {

cd inverse_lattice(const LatticeCoefficients& c, const GroupRef& g, const AlgebraVector& X) {
    require_abelian_catalog(*g, "lattice inverse");
    if (c.group && c.group->name() != g->name()) throw Error(ErrorCode::GroupMismatch, "coefficients of another group");
    cd s = 0.0;
    for (auto& [n, v] : c.values) {
        double ph = 0.0;
        for (int i = 0; i < X.dim(); ++i) ph += n[i] * X[i];
        s += v * std::polar(1.0, ph);
    }
    return s / std::pow(2.0 * kPi, g->dim());
}

cd inverse_shells(const ShellCoefficients& c, const GroupRef& g, const AlgebraVector& X, Scheme scheme,
                  const QuadratureSpec& quad) {
    require_su2(*g, "shell inverse");
    if (c.scheme != scheme) throw Error(ErrorCode::SchemeMismatch, "shell data belongs to the other scheme");
    const double r = X.norm();
    // (1/(pi^2 r^2)) sin(r/2) sum_j c_j sin((j + 1/2) r), continuous at r = 0.
    cd sum = 0.0;
    const double c2 = 2.0 * std::cos(r);
    double prev = -std::sin(0.5 * r), cur = std::sin(0.5 * r);
    for (std::size_t j = 0; j < c.amplitude.size(); ++j) {
        const double kernel = r < 1e-6 ? (j + 0.5) / 2.0 * (1.0 - r * r * ((j + 0.5) * (j + 0.5) + 0.25) / 6.0)
                                       : std::sin(0.5 * r) * cur / (r * r);
        sum += c.amplitude[j] * kernel;
        const double next = c2 * cur - prev;
        prev = cur;
        cur = next;
    }
    sum /= kPi * kPi;
    double pref = 1.0;
    if (r > 0) {
        const double J = jacobian(*g, X);
        if (std::abs(std::sin(r)) < 1e-12)
            throw Error(ErrorCode::JacobianZero, "inverse prefactor is singular where sin||X|| = 0");
        pref = scheme == Scheme::Symmetric ? 1.0 / J : 1.0 / std::sqrt(J);
    }
    // Neglected shells, by Abel summation for slowly decaying amplitudes:
    // |sum_{j>J} c_j sin((j+1/2) r)| <= |c_J| / (2 sin(r/2)), capped at J |c_J|.
    if (c.amplitude.size() > 8) {
        const double n = static_cast<double>(c.amplitude.size());
        const double ks = std::abs(std::sin(0.5 * r));
        const double kern = r < 1e-6 ? 0.5 * (n + 0.5) : std::min(ks / (r * r), 0.5 * (n + 0.5));
        const double count = ks > 0 ? std::min(n, 0.5 / ks) : n;
        const double tail = std::abs(c.amplitude.back()) * count * kern / (kPi * kPi) * pref;
        if (tail > quad.target_rel_tol * std::max(std::abs(sum * pref), 1.0))
            throw Error(ErrorCode::CutoffTooSmall, "shell data truncated before its tail decayed");
    }
    return sum * pref;
}

cd inverse_sampled(const SampledMomentum& s, const GroupRef& g, const AlgebraVector& X, Scheme scheme) {
    const auto& A = s.grid.axes;
    const int n = static_cast<int>(A.size());
    if (n != g->dim()) throw Error(ErrorCode::InvalidDimension, "sample grid dimension differs from the group");
    double cell = 1.0;
    for (auto& a : A) {
        if (a.count < 2) throw Error(ErrorCode::GridMismatch, "grid axis needs at least two nodes");
        cell *= (a.hi - a.lo) / (a.count - 1);
    }
    std::vector<int> idx(n, 0);
    cd sum = 0.0;
    double peak = 0.0, edge = 0.0;
    for (std::size_t k = 0; k < s.grid.values.size(); ++k) {
        double w = cell, ph = 0.0;
        bool on_edge = false;
        for (int i = 0; i < n; ++i) {
            ph += A[i].node(idx[i]) * X[i];
            if (idx[i] == 0 || idx[i] == A[i].count - 1) {
                w *= 0.5;
                on_edge = true;
            }
        }
        const double m = std::abs(s.grid.values[k]);
        peak = std::max(peak, m);
        if (on_edge) edge = std::max(edge, m);
        sum += w * std::polar(1.0, ph) * s.grid.values[k];
        for (int i = n - 1; i >= 0; --i) {
            if (++idx[i] < A[i].count) break;
            idx[i] = 0;
        }
    }
    if (edge > 1e-8 * peak) throw Error(ErrorCode::CutoffTooSmall, "momentum samples have not decayed at the edge");
    sum /= std::pow(2.0 * kPi, n);
    const double J = jacobian(*g, X);
    if (J <= 1e-14 && X.norm() > 0) throw Error(ErrorCode::JacobianZero, "inverse prefactor is singular here");
    return sum / (scheme == Scheme::Symmetric ? J : std::sqrt(J));
}

} // namespace

cd inverse_series_nostar(const MomentumFunction& phi, const GroupRef& g, const AlgebraVector& X, Scheme scheme,
                         const QuadratureSpec& quad) {
    check_dim(*g, X);
    if (auto* l = std::get_if<LatticeCoefficients>(&phi.data)) return inverse_lattice(*l, g, X);
    if (auto* s = std::get_if<ShellCoefficients>(&phi.data)) return inverse_shells(*s, g, X, scheme, quad);
    if (auto* m = std::get_if<SampledMomentum>(&phi.data)) return inverse_sampled(*m, g, X, scheme);
    throw Error(ErrorCode::RepresentationUnsupported,
                "plane-wave sums have no pointwise inverse; use lattice or shell coefficients");
}

cd position_pairing(const PositionFunction& phi, const PositionFunction& psi, const QuadratureSpec& quad) {
    const GroupSpec& g = *phi.group();
    if (g.name() != psi.group()->name()) throw Error(ErrorCode::GroupMismatch, "pairing across groups");
    auto integrand = [&](const AlgebraVector& X) { return std::conj(phi(X)) * psi(X); };
    QuadResult res;
    if (g.family() == GroupFamily::U1 || g.family() == GroupFamily::Torus) {
        res = torus_integral(integrand, g, quad);
    } else if (g.family() == GroupFamily::SU2 && phi.radial() && psi.radial()) {
        const auto& a = *phi.radial();
        const auto& b = *psi.radial();
        res = integrate_1d([&](double r) { return std::pow(std::sin(r), 2) * std::conj(a(r)) * b(r); }, 0.0, kPi,
                           quad.radial_order);
        res.value *= 4.0 * kPi;
        res.error *= 4.0 * kPi;
        res.scale *= 4.0 * kPi;
    } else {
        res = integrate_algebra(integrand, g, quad, true);
    }
    require_resolved(res, quad.target_rel_tol, "position pairing");
    return res.value;
}

cd momentum_pairing(const PositionFunction& phi, const PositionFunction& psi, const QuadratureSpec& quad) {
    const GroupSpec& g = *phi.group();
    if (g.name() != psi.group()->name()) throw Error(ErrorCode::GroupMismatch, "pairing across groups");
    if (g.family() == GroupFamily::U1 || g.family() == GroupFamily::Torus) {
        // Lattice pairing (2 pi)^{-r} sum conj(phi_n) psi_n over the modes the
        // trapezoid rule resolves.
        int n_max = quad.box_order(0);
        for (int i = 1; i < g.dim(); ++i) n_max = std::min(n_max, quad.box_order(i));
        n_max = std::max(0, n_max / 2 - 1);
        const auto a = lattice_coefficients(phi, n_max, quad);
        const auto b = lattice_coefficients(psi, n_max, quad);
        cd s = 0.0;
        for (auto& [n, v] : a.values) s += std::conj(v) * b.at(n);
        return s / std::pow(2.0 * kPi, g.dim());
    }
    require_su2(g, "momentum pairing");
    if (!phi.radial() || !psi.radial())
        throw Error(ErrorCode::NotClassFunction, "su2 momentum pairing is implemented for class functions");
    // Route through position space: shell data, no-star inverse, Haar pairing.
    const int shells = 256;
    MomentumFunction A{class_shell_coefficients(phi, Scheme::Symmetric, shells), {}};
    MomentumFunction B{class_shell_coefficients(psi, Scheme::Symmetric, shells), {}};
    QuadratureSpec loose = quad;
    loose.target_rel_tol = 1.0;  // tail handled by the Haar pairing's own estimate
    const auto G = phi.group();
    auto radial = [&](const MomentumFunction& m) {
        return PositionFunction::Radial([&m, G, loose](double r) {
            return inverse_series_nostar(m, G, AlgebraVector{0.0, 0.0, r}, Scheme::Symmetric, loose);
        });
    };
    auto fa = PositionFunction::custom(G, nullptr, Domain::PrincipalBranch, radial(A));
    auto fb = PositionFunction::custom(G, nullptr, Domain::PrincipalBranch, radial(B));
    return position_pairing(fa, fb, quad);
}

double parseval_gap(const PositionFunction& phi, const PositionFunction& psi, const QuadratureSpec& quad) {
    return std::abs(position_pairing(phi, psi, quad) - momentum_pairing(phi, psi, quad));
}

PositionFunction translate_left(const PositionFunction& psi, const AlgebraVector& Y) {
    const GroupRef g = psi.group();
    check_dim(*g, Y);
    return PositionFunction::custom(
        g, [psi, Y, g](const AlgebraVector& X) { return psi(bch(*g, Y, X)); }, psi.domain(), std::nullopt, nullptr,
        "translate(" + psi.label() + ")");
}

cd convolve_position(const PositionFunction& phi, const PositionFunction& psi, const GroupPoint& g,
                     const QuadratureSpec& quad) {
    const GroupRef G = phi.group();
    if (G->name() != psi.group()->name() || G->name() != g.group->name())
        throw Error(ErrorCode::GroupMismatch, "convolution across groups");
    auto integrand = [&](const AlgebraVector& Z) {
        const GroupPoint h_inv_g = multiply(inverse(exp_map(G, Z)), g);
        return phi(h_inv_g.principal_log) * psi(Z);
    };
    QuadResult res = (G->family() == GroupFamily::U1 || G->family() == GroupFamily::Torus)
                         ? torus_integral(integrand, *G, quad)
                         : integrate_algebra(integrand, *G, quad, true);
    require_resolved(res, quad.target_rel_tol, "convolve_position");
    return res.value;
}

MomentumFunction convolve_momentum(const MomentumFunction& phi, const MomentumFunction& psi,
                                   const QuadratureSpec&) {
    const auto* a = std::get_if<LatticeCoefficients>(&phi.data);
    const auto* b = std::get_if<LatticeCoefficients>(&psi.data);
    if (!a || !b)
        throw Error(ErrorCode::RepresentationUnsupported, "momentum convolution is implemented on lattice coefficients");
    if (a->group->name() != b->group->name()) throw Error(ErrorCode::GroupMismatch, "convolution across groups");
    const int r = a->group->dim();
    LatticeCoefficients out{a->group, {}};
    const double norm = 1.0 / std::pow(2.0 * kPi, r);
    for (auto& [q, u] : a->values)
        for (auto& [k, v] : b->values) {
            std::vector<int> n(r);
            for (int i = 0; i < r; ++i) n[i] = q[i] + k[i];
            out.values[n] += norm * u * v;
        }
    return MomentumFunction{out, phi.norm};
}

} // namespace ncf
