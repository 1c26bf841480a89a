#include "ncf/quadrature.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <numbers>

#include "ncf/error.hpp"

namespace ncf {

namespace {

constexpr double kPi = std::numbers::pi;
using cd = std::complex<double>;

// Nodes on [-1, 1] by Newton iteration on the three-term recurrence.
const Rule& reference_rule(int n) {
    static std::mutex mu;
    static std::map<int, Rule> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    Rule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        r.weights[i] = w;
        r.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) r.nodes[n / 2] = 0.0;
    return cache.emplace(n, std::move(r)).first->second;
}

int half(int n) { return std::max(2, n / 2); }

QuadResult spherical(const AlgebraIntegrand& f, const GroupSpec& g, double R, int nr, int nt, int np,
                     bool with_j) {
    const Rule rr = gauss_legendre(nr, 0.0, R);
    const Rule rt = gauss_legendre(nt, -1.0, 1.0);
    const Rule rp = periodic_rule(np, 0.0);
    QuadResult out{};
    AlgebraVector X = AlgebraVector::zero(3);
    for (int i = 0; i < nr; ++i) {
        const double r = rr.nodes[i];
        double wr = rr.weights[i] * r * r;
        if (with_j) {
            X.c << r, 0, 0;
            wr *= jacobian(g, X);
        }
        for (int a = 0; a < nt; ++a) {
            const double ct = rt.nodes[a];
            const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
            for (int b = 0; b < np; ++b) {
                const double ph = rp.nodes[b];
                X.c << r * st * std::cos(ph), r * st * std::sin(ph), r * ct;
                const double w = wr * rt.weights[a] * rp.weights[b];
                const cd v = f(X);
                out.value += w * v;
                out.scale += std::abs(w * v);
            }
        }
    }
    return out;
}

QuadResult box(const AlgebraIntegrand& f, const GroupSpec& g, double lo, double hi, const std::vector<int>& orders,
               bool with_j) {
    const int n = g.dim();
    std::vector<Rule> rules;
    for (int i = 0; i < n; ++i) rules.push_back(gauss_legendre(orders[i], lo, hi));
    std::vector<int> idx(n, 0);
    QuadResult out{};
    AlgebraVector X = AlgebraVector::zero(n);
    while (true) {
        double w = 1.0;
        for (int i = 0; i < n; ++i) {
            X.c[i] = rules[i].nodes[idx[i]];
            w *= rules[i].weights[idx[i]];
        }
        if (with_j) w *= jacobian(g, X);
        const cd v = f(X);
        out.value += w * v;
        out.scale += std::abs(w * v);
        int i = n - 1;
        while (i >= 0 && idx[i] == orders[i] - 1) idx[i--] = 0;
        if (i < 0) break;
        ++idx[i];
    }
    return out;
}

} // namespace

void QuadratureSpec::validate() const {
    if (radial_order < 2 || theta_order < 2 || phi_order < 2)
        throw Error(ErrorCode::InvalidOrder, "quadrature orders must be at least 2");
    for (int n : box_orders)
        if (n < 2) throw Error(ErrorCode::InvalidOrder, "quadrature orders must be at least 2");
    if (!(cutoff_radius > 0)) throw Error(ErrorCode::InvalidArgument, "cutoff radius must be positive");
    if (!(target_rel_tol > 0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
}

int QuadratureSpec::box_order(int axis) const {
    if (axis < static_cast<int>(box_orders.size())) return box_orders[axis];
    return radial_order;
}

nlohmann::ordered_json QuadratureSpec::to_json() const {
    nlohmann::ordered_json j;
    j["radial_order"] = radial_order;
    j["angular_orders"] = {theta_order, phi_order};
    j["box_orders"] = box_orders;
    j["cutoff_radius"] = cutoff_radius;
    j["fixed_cutoff"] = fixed_cutoff;
    j["target_rel_tol"] = target_rel_tol;
    return j;
}

Rule gauss_legendre(int n, double a, double b) {
    if (n < 1) throw Error(ErrorCode::InvalidOrder, "rule needs at least one node");
    if (!(a < b)) throw Error(ErrorCode::InvalidArgument, "empty interval");
    const Rule& ref = reference_rule(n);
    const double h = 0.5 * (b - a), m = 0.5 * (a + b);
    Rule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        r.nodes[i] = m + h * ref.nodes[i];
        r.weights[i] = h * ref.weights[i];
    }
    return r;
}

Rule periodic_rule(int n, double a) {
    if (n < 1) throw Error(ErrorCode::InvalidOrder, "rule needs at least one node");
    Rule r;
    const double h = 2.0 * kPi / n;
    for (int i = 0; i < n; ++i) {
        r.nodes.push_back(a + h * i);
        r.weights.push_back(h);
    }
    return r;
}

void require_resolved(const QuadResult& r, double tol, const char* what) {
    const double ref = std::max(std::abs(r.value), 1e-3 * r.scale);
    if (r.error > tol * ref && r.error > 1e-300) {
        char buf[96];
        std::snprintf(buf, sizeof buf, ": error estimate %.3g exceeds %.3g; raise the quadrature orders", r.error,
                      tol * ref);
        throw Error(ErrorCode::QuadratureUnderResolved, what + std::string(buf));
    }
}

QuadResult integrate_algebra(const AlgebraIntegrand& f, const GroupSpec& g, const QuadratureSpec& spec,
                             bool with_jacobian, Region region) {
    spec.validate();
    const bool principal = region == Region::PrincipalBranch;
    QuadResult full, coarse;
    if (g.dim() == 3 && !g.abelian()) {
        const double R = principal ? g.principal_radius().value_or(spec.cutoff_radius) : spec.cutoff_radius;
        full = spherical(f, g, R, spec.radial_order, spec.theta_order, spec.phi_order, with_jacobian);
        coarse = spherical(f, g, R, half(spec.radial_order), half(spec.theta_order), half(spec.phi_order),
                           with_jacobian);
    } else {
        const double R = principal ? g.principal_radius().value_or(spec.cutoff_radius) : spec.cutoff_radius;
        std::vector<int> orders, halves;
        for (int i = 0; i < g.dim(); ++i) {
            orders.push_back(spec.box_order(i));
            halves.push_back(half(spec.box_order(i)));
        }
        full = box(f, g, -R, R, orders, with_jacobian);
        coarse = box(f, g, -R, R, halves, with_jacobian);
    }
    full.error = std::abs(full.value - coarse.value);
    return full;
}

cd integrate_plane(const std::function<cd(double, double)>& f, const QuadratureSpec& spec, double angle_offset,
                   double scale_floor) {
    spec.validate();
    const double R = spec.cutoff_radius;
    const Rule rr = gauss_legendre(spec.radial_order, 0.0, R);
    const Rule rp = periodic_rule(spec.phi_order, angle_offset);
    cd sum = 0.0;
    double peak = 0.0;
    for (int i = 0; i < spec.radial_order; ++i) {
        for (int b = 0; b < spec.phi_order; ++b) {
            const cd v = f(rr.nodes[i], rp.nodes[b]);
            peak = std::max(peak, std::abs(v));
            sum += rr.weights[i] * rr.nodes[i] * rp.weights[b] * v;
        }
    }
    double edge = 0.0;
    for (int b = 0; b < spec.phi_order; ++b) edge = std::max(edge, std::abs(f(R, rp.nodes[b])));
    if (edge > spec.target_rel_tol * std::max(peak, scale_floor))
        throw Error(ErrorCode::PlaneCutoffTooSmall, "integrand has not decayed at the plane cutoff");
    return sum;
}

} // namespace ncf
