#include "ncf/waves.hpp"

#include <cmath>
#include <numbers>

#include "ncf/error.hpp"

namespace ncf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool near_integer(double t) { return std::abs(t - std::round(t)) <= kSupportTol; }

// Visits every integer point of [lo, hi]^r.
template <class F>
void for_each_lattice(int r, int lo, int hi, F&& f) {
    std::vector<int> n(r, lo);
    while (true) {
        f(n);
        int i = r - 1;
        for (; i >= 0; --i) {
            if (++n[i] <= hi) break;
            n[i] = lo;
        }
        if (i < 0) return;
    }
}

AlgebraVector shifted(const AlgebraVector& X, const std::vector<AlgebraVector>& a, const std::vector<int>& n) {
    AlgebraVector Y = X;
    for (std::size_t i = 0; i < a.size(); ++i) Y.c += kTwoPi * n[i] * a[i].c;
    return Y;
}

} // namespace

bool ModeSupport::contains(const MomentumVector& p) const {
    for (auto& a : basis)
        if (!near_integer(p.c.dot(a.c))) return false;
    return true;
}

cd invariant_wave_reduced(const GroupSpec& g, const AlgebraVector& X, const MomentumVector& p, Scheme scheme) {
    check_dim(g, X);
    check_dim(g, p);
    const TorusBasis tb = torus_basis_at(g, X);
    for (auto& a : tb.basis)
        if (!near_integer(p.c.dot(a.c))) return 0.0;
    cd v = std::polar(1.0, -pairing(p, X));
    if (scheme == Scheme::Duflo) {
        const double J = jacobian(g, reduce_to_principal(g, X));
        if (J <= 1e-14) throw Error(ErrorCode::JacobianZero, "Duflo wave at a zero of J");
        v /= std::sqrt(J);
    }
    return v;
}

ModeSupport support_planes(const GroupRef& g, const AlgebraVector& X, double p_max) {
    ModeSupport s{g, X, torus_basis_at(*g, X).basis, {}};
    const int m = static_cast<int>(std::floor(std::max(p_max, 0.0)));
    const int r = static_cast<int>(s.basis.size());
    for_each_lattice(r, -m, m, [&](const std::vector<int>& n) { s.labels.push_back(n); });
    return s;
}

int spin_floor(double p_norm) { return static_cast<int>(std::floor(p_norm)); }
int spin_floor(const MomentumVector& p) { return spin_floor(p.norm()); }

ProjectionResult project_position_checked(const PositionFunction& psi0, const AlgebraVector& X, BranchWindow w,
                                          double tol) {
    const GroupSpec& g = *psi0.group();
    if (w.lo > w.hi) throw Error(ErrorCode::InvalidArgument, "empty branch window");
    const auto a = torus_basis_at(g, X).basis;
    const int r = static_cast<int>(a.size());
    ProjectionResult out{0.0, 0.0};
    for_each_lattice(r, w.lo, w.hi, [&](const std::vector<int>& n) { out.value += psi0(shifted(X, a, n)); });
    for_each_lattice(r, w.lo - 1, w.hi + 1, [&](const std::vector<int>& n) {
        bool outside = false;
        for (int k : n) outside = outside || k < w.lo || k > w.hi;
        if (outside) out.tail += std::abs(psi0(shifted(X, a, n)));
    });
    if (out.tail > tol * std::max(std::abs(out.value), 1.0))
        throw Error(ErrorCode::WindowTooSmall, "branch window tail " + std::to_string(out.tail) + " exceeds tolerance");
    return out;
}

cd project_position(const PositionFunction& psi0, const AlgebraVector& X, BranchWindow w, double tol) {
    return project_position_checked(psi0, X, w, tol).value;
}

BranchWindow auto_window(const PositionFunction& psi0, const AlgebraVector& X, double tol, int max_n) {
    for (int n = 0; n <= max_n; ++n) {
        try {
            project_position_checked(psi0, X, {-n, n}, tol);
            return {-n, n};
        } catch (const Error& e) {
            if (e.code() != ErrorCode::WindowTooSmall) throw;
        }
    }
    throw Error(ErrorCode::WindowTooSmall, "no window up to the search limit suffices");
}

cd cesaro_branch_sum(const GroupSpec& g, const AlgebraVector& X, const MomentumVector& p, int N) {
    const TorusBasis tb = torus_basis_at(g, X);
    const AlgebraVector& a = tb.basis.front();
    const double px = pairing(p, X);
    const double pa = p.c.dot(a.c);
    cd s = 0.0;
    for (int n = -N; n <= N; ++n) s += std::polar(1.0, -(px + kTwoPi * n * pa));
    return s / static_cast<double>(2 * N + 1);
}

} // namespace ncf
