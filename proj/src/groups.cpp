#include "ncf/groups.hpp"

#include <cmath>
#include <numbers>

#include "ncf/error.hpp"

namespace ncf {

namespace {

constexpr double kPi = std::numbers::pi;

const Eigen::Matrix2cd& pauli(int k) {
    static const Eigen::Matrix2cd s[3] = {
        (Eigen::Matrix2cd() << 0, 1, 1, 0).finished(),
        (Eigen::Matrix2cd() << 0, cd(0, -1), cd(0, 1), 0).finished(),
        (Eigen::Matrix2cd() << 1, 0, 0, -1).finished(),
    };
    return s[k];
}

double sinc(double x) {
    if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0 + x * x * x * x / 120.0;
    return std::sin(x) / x;
}

// Wrap into (-pi, pi].
double wrap_angle(double x) {
    double y = std::remainder(x, 2.0 * kPi);
    if (y <= -kPi) y += 2.0 * kPi;
    return y;
}

AlgebraVector su2_log(const Eigen::Matrix2cd& m, bool allow_boundary) {
    // m = cos r + i sin r (u.sigma), so Im tr(sigma_k m)/2 = sin r u_k.
    const double c = 0.5 * m.trace().real();
    Eigen::Vector3d s;
    for (int k = 0; k < 3; ++k) s[k] = 0.5 * (pauli(k) * m).trace().imag();
    const double sn = s.norm();
    const double r = std::atan2(sn, c);
    if (r > kPi - 1e-12) {
        if (!allow_boundary) throw Error(ErrorCode::BoundaryElement, "-I has no principal logarithm");
        return AlgebraVector{0.0, 0.0, kPi};
    }
    if (sn == 0.0) return AlgebraVector::zero(3);
    return AlgebraVector(Eigen::VectorXd(s * (r / sn)));
}

} // namespace

SpinLabel::SpinLabel(int two_lambda) : twice_lambda(two_lambda) {
    if (two_lambda < 0) throw Error(ErrorCode::InvalidSpin, "2*lambda must be non-negative");
}

GroupRef make_group(GroupKind kind, int torus_rank) {
    switch (kind) {
    case GroupKind::U1:
        return std::make_shared<const GroupSpec>("u1", GroupFamily::U1, 1, 1, std::vector<double>{0.0},
                                                 std::vector<AlgebraVector>{AlgebraVector{1.0}}, BchStrategy{},
                                                 JacobianStrategy::ClosedForm, kPi);
    case GroupKind::SU2: {
        std::vector<double> c(27, 0.0);
        auto set = [&](int i, int j, int k, double v) { c[(i * 3 + j) * 3 + k] = v; };
        // c_ij^k = -2 eps_ijk for t_i = i sigma_i.
        set(0, 1, 2, -2); set(1, 2, 0, -2); set(2, 0, 1, -2);
        set(1, 0, 2, 2);  set(2, 1, 0, 2);  set(0, 2, 1, 2);
        return std::make_shared<const GroupSpec>("su2", GroupFamily::SU2, 3, 1, std::move(c),
                                                 std::vector<AlgebraVector>{AlgebraVector{0.0, 0.0, 1.0}},
                                                 BchStrategy{}, JacobianStrategy::ClosedForm, kPi);
    }
    case GroupKind::Torus: {
        if (torus_rank < 1) throw Error(ErrorCode::InvalidDimension, "torus rank must be at least 1");
        const int r = torus_rank;
        std::vector<AlgebraVector> gens;
        for (int i = 0; i < r; ++i) {
            AlgebraVector e = AlgebraVector::zero(r);
            e.c[i] = 1.0;
            gens.push_back(e);
        }
        return std::make_shared<const GroupSpec>("torus" + std::to_string(r), GroupFamily::Torus, r, r,
                                                 std::vector<double>(static_cast<std::size_t>(r) * r * r, 0.0),
                                                 std::move(gens), BchStrategy{}, JacobianStrategy::ClosedForm, kPi);
    }
    }
    throw Error(ErrorCode::UnsupportedGroup, "unknown group kind");
}

GroupRef make_group(const std::string& name) {
    if (name == "u1") return make_group(GroupKind::U1);
    if (name == "su2") return make_group(GroupKind::SU2);
    if (name.rfind("torus", 0) == 0) {
        std::string digits = name.substr(5);
        if (!digits.empty() && digits.front() == '(' && digits.back() == ')')
            digits = digits.substr(1, digits.size() - 2);
        try {
            std::size_t used = 0;
            const int r = std::stoi(digits, &used);
            if (used == digits.size()) return make_group(GroupKind::Torus, r);
        } catch (const std::exception&) {
        }
    }
    throw Error(ErrorCode::UnsupportedGroup, "unknown group '" + name + "'");
}

Eigen::Matrix2cd su2_matrix(const AlgebraVector& X) {
    const double r = X.norm();
    const double sc = sinc(r);
    Eigen::Matrix2cd m = std::cos(r) * Eigen::Matrix2cd::Identity();
    for (int k = 0; k < 3; ++k) m += cd(0, sc * X[k]) * pauli(k);
    return m;
}

AlgebraVector reduce_to_principal(const GroupSpec& g, const AlgebraVector& X) {
    check_dim(g, X);
    switch (g.family()) {
    case GroupFamily::SU2: {
        const double r = X.norm();
        if (r <= kPi) return X;
        const double rr = std::remainder(r, 2.0 * kPi);
        return X * (rr / r);
    }
    case GroupFamily::U1:
    case GroupFamily::Torus: {
        AlgebraVector Y = X;
        for (int i = 0; i < Y.dim(); ++i) Y.c[i] = wrap_angle(Y.c[i]);
        return Y;
    }
    case GroupFamily::Generic:
        break;
    }
    throw Error(ErrorCode::UnsupportedGroup, "no exponential map for " + g.name());
}

GroupPoint exp_map(const GroupRef& g, const AlgebraVector& X) {
    GroupPoint pt;
    pt.group = g;
    pt.principal_log = reduce_to_principal(*g, X);
    if (g->family() == GroupFamily::SU2) {
        pt.matrix = su2_matrix(X);
    } else {
        for (int i = 0; i < X.dim(); ++i) pt.phases.push_back(std::polar(1.0, X[i]));
    }
    return pt;
}

AlgebraVector log_principal(const GroupPoint& pt) {
    if (pt.group->family() == GroupFamily::SU2) return su2_log(*pt.matrix, false);
    AlgebraVector X = AlgebraVector::zero(static_cast<int>(pt.phases.size()));
    for (std::size_t i = 0; i < pt.phases.size(); ++i) X.c[i] = std::arg(pt.phases[i]);
    return X;
}

GroupPoint multiply(const GroupPoint& a, const GroupPoint& b) {
    if (a.group.get() != b.group.get() && a.group->name() != b.group->name())
        throw Error(ErrorCode::GroupMismatch, "points belong to different groups");
    GroupPoint pt;
    pt.group = a.group;
    if (a.group->family() == GroupFamily::SU2) {
        pt.matrix = (*a.matrix) * (*b.matrix);
        pt.principal_log = su2_log(*pt.matrix, true);
    } else {
        pt.principal_log = AlgebraVector::zero(static_cast<int>(a.phases.size()));
        for (std::size_t i = 0; i < a.phases.size(); ++i) {
            pt.phases.push_back(a.phases[i] * b.phases[i]);
            pt.principal_log.c[i] = wrap_angle(a.principal_log[i] + b.principal_log[i]);
        }
    }
    return pt;
}

GroupPoint inverse(const GroupPoint& a) {
    GroupPoint pt;
    pt.group = a.group;
    pt.principal_log = -a.principal_log;
    if (a.matrix) pt.matrix = a.matrix->adjoint();
    for (auto z : a.phases) pt.phases.push_back(std::conj(z));
    if (!a.matrix) {
        for (int i = 0; i < pt.principal_log.dim(); ++i) pt.principal_log.c[i] = wrap_angle(pt.principal_log[i]);
    }
    return pt;
}

double character_radial(int twice_lambda, double r) {
    if (twice_lambda < 0) throw Error(ErrorCode::InvalidSpin, "2*lambda must be non-negative");
    // sin((n+1) r)/sin r = U_n(cos r); the recurrence has no removable points.
    const double x = std::cos(r);
    double u0 = 1.0, u1 = 2.0 * x;
    if (twice_lambda == 0) return u0;
    for (int k = 1; k < twice_lambda; ++k) {
        const double u2 = 2.0 * x * u1 - u0;
        u0 = u1;
        u1 = u2;
    }
    return u1;
}

double character(SpinLabel lam, const AlgebraVector& X) {
    return character_radial(lam.twice_lambda, X.norm());
}

Eigen::MatrixXcd spin_rep(SpinLabel lam, const AlgebraVector& X) {
    if (X.dim() != 3) throw Error(ErrorCode::InvalidDimension, "spin_rep needs an su2 vector");
    const int d = lam.dimension();
    const double l = lam.lambda();
    // Ladder construction in the basis m = l, l-1, ..., -l.
    Eigen::MatrixXcd jz = Eigen::MatrixXcd::Zero(d, d), jp = Eigen::MatrixXcd::Zero(d, d);
    for (int a = 0; a < d; ++a) {
        const double m = l - a;
        jz(a, a) = m;
        if (a > 0) jp(a - 1, a) = std::sqrt(l * (l + 1) - m * (m + 1));
    }
    const Eigen::MatrixXcd jm = jp.adjoint();
    const Eigen::MatrixXcd jx = 0.5 * (jp + jm);
    const Eigen::MatrixXcd jy = cd(0, -0.5) * (jp - jm);
    const Eigen::MatrixXcd h = X[0] * jx + X[1] * jy + X[2] * jz;
    // exp(2i X.J): with J = sigma/2 at spin 1/2 this is exp(i X.sigma).
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    Eigen::VectorXcd ph(d);
    for (int a = 0; a < d; ++a) ph[a] = std::polar(1.0, 2.0 * es.eigenvalues()[a]);
    return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

} // namespace ncf
