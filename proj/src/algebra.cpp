#include "ncf/algebra.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "ncf/error.hpp"

namespace ncf {

namespace {

constexpr double kPi = std::numbers::pi;

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Dynkin's formula collected by word. A word w_1..w_m stands for the
// right-nested commutator [w_1,[w_2,...[w_{m-1},w_m]]].
struct Word {
    std::string letters;
    double coef;
};

void collect_words(int order, std::vector<std::pair<int, int>>& pairs, int deg,
                   std::map<std::string, double>& acc) {
    if (!pairs.empty()) {
        auto [rn, sn] = pairs.back();
        if (!(sn > 1 || (sn == 0 && rn > 1))) {
            const int k = static_cast<int>(pairs.size());
            double coef = ((k % 2 == 1) ? 1.0 : -1.0) / k / deg;
            std::string w;
            for (auto [r, s] : pairs) {
                coef /= factorial(r) * factorial(s);
                w.append(r, 'X');
                w.append(s, 'Y');
            }
            acc[w] += coef;
        }
    }
    for (int r = 0; deg + r <= order; ++r) {
        for (int s = 0; deg + r + s <= order; ++s) {
            if (r + s == 0) continue;
            pairs.emplace_back(r, s);
            collect_words(order, pairs, deg + r + s, acc);
            pairs.pop_back();
        }
    }
}

const std::vector<Word>& dynkin_words(int order) {
    static std::mutex mu;
    static std::map<int, std::vector<Word>> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(order);
    if (it != cache.end()) return it->second;
    std::map<std::string, double> acc;
    std::vector<std::pair<int, int>> pairs;
    collect_words(order, pairs, 0, acc);
    std::vector<Word> words;
    for (auto& [w, c] : acc) {
        if (std::abs(c) > 1e-15) words.push_back({w, c});
    }
    return cache.emplace(order, std::move(words)).first->second;
}

// sin(x)/x with the removable point handled.
double sinc(double x) {
    if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0 + x * x * x * x / 120.0;
    return std::sin(x) / x;
}

AlgebraVector su2_compose(const AlgebraVector& X, const AlgebraVector& Y) {
    // Unit quaternions w + i v.sigma multiply as
    // (w1 w2 - v1.v2, w1 v2 + w2 v1 - v1 x v2).
    const double a = X.norm(), b = Y.norm();
    const Eigen::Vector3d v1 = X.c * sinc(a), v2 = Y.c * sinc(b);
    const double w1 = std::cos(a), w2 = std::cos(b);
    const double w = w1 * w2 - v1.dot(v2);
    const Eigen::Vector3d v = w1 * v2 + w2 * v1 - v1.cross(v2);
    const double s = v.norm();
    const double r = std::atan2(s, w);
    if (r > kPi - 1e-12) throw Error(ErrorCode::BoundaryConjugacy, "product is -I");
    if (s == 0.0) return AlgebraVector::zero(3);
    return AlgebraVector(Eigen::VectorXd(v * (r / s)));
}

} // namespace

AlgebraVector::AlgebraVector(std::initializer_list<double> xs) : c(xs.size()) {
    int i = 0;
    for (double x : xs) c[i++] = x;
}

MomentumVector::MomentumVector(std::initializer_list<double> xs) : c(xs.size()) {
    int i = 0;
    for (double x : xs) c[i++] = x;
}

GroupSpec::GroupSpec(std::string name, GroupFamily family, int dim, int rank,
                     std::vector<double> structure_constants,
                     std::vector<AlgebraVector> torus_generators, BchStrategy bch,
                     JacobianStrategy jac, std::optional<double> principal_radius)
    : name_(std::move(name)), family_(family), dim_(dim), rank_(rank),
      c_(std::move(structure_constants)), torus_(std::move(torus_generators)), bch_(bch),
      jac_(jac), radius_(principal_radius) {
    const int n = dim_;
    if (n < 1) throw Error(ErrorCode::InvalidDimension, "dim must be positive");
    if (rank_ < 0 || rank_ > n) throw Error(ErrorCode::InvalidDimension, "rank must lie in [0, dim]");
    if (static_cast<int>(c_.size()) != n * n * n)
        throw Error(ErrorCode::InvalidDimension, "structure constants must have dim^3 entries");
    if (static_cast<int>(torus_.size()) != rank_)
        throw Error(ErrorCode::InvalidDimension, "need exactly rank torus generators");
    for (auto& a : torus_) {
        if (a.dim() != n) throw Error(ErrorCode::InvalidDimension, "torus generator has wrong length");
    }
    if (bch_.order < 1 || bch_.order > 10) throw Error(ErrorCode::InvalidOrder, "series order must lie in 1..10");
    if (radius_ && !(*radius_ > 0)) throw Error(ErrorCode::InvalidArgument, "principal radius must be positive");

    double scale = 0.0;
    for (double v : c_) {
        if (!std::isfinite(v)) throw Error(ErrorCode::InvalidStructureConstants, "non-finite entry");
        scale = std::max(scale, std::abs(v));
    }
    abelian_ = scale == 0.0;
    const double tol = 1e-12 * std::max(1.0, scale * scale);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (std::abs(c(i, j, k) + c(j, i, k)) > 1e-12 * std::max(1.0, scale))
                    throw Error(ErrorCode::InvalidStructureConstants, "not antisymmetric");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    double s = 0.0;
                    for (int m = 0; m < n; ++m)
                        s += c(i, j, m) * c(m, k, l) + c(j, k, m) * c(m, i, l) + c(k, i, m) * c(m, j, l);
                    if (std::abs(s) > tol)
                        throw Error(ErrorCode::InvalidStructureConstants, "Jacobi identity fails");
                }
    for (int i = 0; i < n; ++i) {
        double tr = 0.0;
        for (int j = 0; j < n; ++j) tr += c(i, j, j);
        if (std::abs(tr) > 1e-12 * std::max(1.0, scale))
            throw Error(ErrorCode::NotUnimodular, "ad has nonzero trace");
    }
}

GroupSpec GroupSpec::with_bch(BchStrategy s) const {
    GroupSpec g = *this;
    if (s.order < 1 || s.order > 10) throw Error(ErrorCode::InvalidOrder, "series order must lie in 1..10");
    g.bch_ = s;
    return g;
}

GroupSpec GroupSpec::with_jacobian(JacobianStrategy s) const {
    GroupSpec g = *this;
    g.jac_ = s;
    return g;
}

nlohmann::ordered_json GroupSpec::to_json() const {
    nlohmann::ordered_json j;
    j["name"] = name_;
    j["dim"] = dim_;
    j["rank"] = rank_;
    auto cs = nlohmann::ordered_json::array();
    for (int i = 0; i < dim_; ++i) {
        auto row = nlohmann::ordered_json::array();
        for (int k = 0; k < dim_; ++k) {
            auto col = nlohmann::ordered_json::array();
            for (int l = 0; l < dim_; ++l) col.push_back(c(i, k, l));
            row.push_back(col);
        }
        cs.push_back(row);
    }
    j["structure_constants"] = cs;
    auto tg = nlohmann::ordered_json::array();
    for (auto& a : torus_) tg.push_back(std::vector<double>(a.c.data(), a.c.data() + a.dim()));
    j["torus_generators"] = tg;
    nlohmann::ordered_json st;
    if (bch_.kind == BchStrategy::Kind::ClosedForm) {
        st["bch"] = "closed_form";
    } else {
        st["bch"] = "series";
        st["bch_order"] = bch_.order;
    }
    st["jacobian"] = jac_ == JacobianStrategy::ClosedForm ? "closed_form" : "determinant";
    j["strategies"] = st;
    if (radius_) j["principal_radius"] = *radius_;
    else j["principal_radius"] = "unbounded";
    return j;
}

GroupSpec GroupSpec::from_json(const nlohmann::json& j) {
    try {
        const std::string name = j.at("name").get<std::string>();
        const int n = j.at("dim").get<int>();
        const int r = j.at("rank").get<int>();
        std::vector<double> cs(static_cast<std::size_t>(n) * n * n, 0.0);
        const auto& jc = j.at("structure_constants");
        if (static_cast<int>(jc.size()) != n) throw Error(ErrorCode::InvalidDimension, "structure constants shape");
        for (int i = 0; i < n; ++i) {
            if (static_cast<int>(jc[i].size()) != n) throw Error(ErrorCode::InvalidDimension, "structure constants shape");
            for (int k = 0; k < n; ++k) {
                if (static_cast<int>(jc[i][k].size()) != n)
                    throw Error(ErrorCode::InvalidDimension, "structure constants shape");
                for (int l = 0; l < n; ++l) cs[(i * n + k) * n + l] = jc[i][k][l].get<double>();
            }
        }
        std::vector<AlgebraVector> tg;
        for (auto& a : j.at("torus_generators")) {
            auto v = a.get<std::vector<double>>();
            tg.emplace_back(Eigen::Map<Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())));
        }
        BchStrategy bs;
        JacobianStrategy js = JacobianStrategy::Determinant;
        if (j.contains("strategies")) {
            const auto& st = j["strategies"];
            if (st.value("bch", "closed_form") == "series") {
                bs.kind = BchStrategy::Kind::Series;
                bs.order = st.value("bch_order", 6);
            }
            js = st.value("jacobian", "determinant") == "closed_form" ? JacobianStrategy::ClosedForm
                                                                      : JacobianStrategy::Determinant;
        }
        std::optional<double> radius;
        if (j.contains("principal_radius") && j["principal_radius"].is_number())
            radius = j["principal_radius"].get<double>();

        GroupFamily fam = GroupFamily::Generic;
        if (name == "su2") fam = GroupFamily::SU2;
        else if (name == "u1") fam = GroupFamily::U1;
        else if (name.rfind("torus", 0) == 0) fam = GroupFamily::Torus;
        return GroupSpec(name, fam, n, r, std::move(cs), std::move(tg), bs, js, radius);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

void check_dim(const GroupSpec& g, const AlgebraVector& X) {
    if (X.dim() != g.dim()) throw Error(ErrorCode::InvalidDimension, "algebra vector has wrong length");
    if (!X.c.allFinite()) throw Error(ErrorCode::InvalidArgument, "non-finite coordinates");
}

void check_dim(const GroupSpec& g, const MomentumVector& p) {
    if (p.dim() != g.dim()) throw Error(ErrorCode::InvalidDimension, "momentum has wrong length");
    if (!p.c.allFinite()) throw Error(ErrorCode::InvalidArgument, "non-finite momentum");
}

AlgebraVector bracket(const GroupSpec& g, const AlgebraVector& X, const AlgebraVector& Y) {
    check_dim(g, X);
    check_dim(g, Y);
    const int n = g.dim();
    AlgebraVector Z = AlgebraVector::zero(n);
    if (g.abelian()) return Z;
    for (int i = 0; i < n; ++i) {
        if (X[i] == 0.0) continue;
        for (int j = 0; j < n; ++j) {
            const double xy = X[i] * Y[j];
            if (xy == 0.0) continue;
            for (int k = 0; k < n; ++k) Z.c[k] += g.c(i, j, k) * xy;
        }
    }
    return Z;
}

Eigen::MatrixXd ad_matrix(const GroupSpec& g, const AlgebraVector& X) {
    check_dim(g, X);
    const int n = g.dim();
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) M(k, j) += g.c(i, j, k) * X[i];
    return M;
}

AlgebraVector bch_series(const GroupSpec& g, const AlgebraVector& X, const AlgebraVector& Y,
                         int order, double* truncation_estimate) {
    check_dim(g, X);
    check_dim(g, Y);
    if (order < 1 || order > 10) throw Error(ErrorCode::InvalidOrder, "series order must lie in 1..10");
    const int n = g.dim();
    std::vector<Eigen::VectorXd> by_degree(order + 1, Eigen::VectorXd::Zero(n));
    if (g.abelian()) {
        by_degree[1] = X.c + Y.c;
    } else {
        for (const auto& w : dynkin_words(order)) {
            const int m = static_cast<int>(w.letters.size());
            AlgebraVector v = w.letters[m - 1] == 'X' ? X : Y;
            for (int i = m - 2; i >= 0; --i) v = bracket(g, w.letters[i] == 'X' ? X : Y, v);
            by_degree[m] += w.coef * v.c;
        }
    }
    Eigen::VectorXd Z = Eigen::VectorXd::Zero(n);
    for (auto& d : by_degree) Z += d;
    if (truncation_estimate) {
        double est = by_degree[order].norm();
        if (order >= 2) est += by_degree[order - 1].norm();
        *truncation_estimate = est;
    }
    return AlgebraVector(Z);
}

AlgebraVector bch_closed(const GroupSpec& g, const AlgebraVector& X, const AlgebraVector& Y) {
    check_dim(g, X);
    check_dim(g, Y);
    switch (g.family()) {
    case GroupFamily::U1:
    case GroupFamily::Torus:
        return X + Y;
    case GroupFamily::SU2:
        return su2_compose(X, Y);
    case GroupFamily::Generic:
        if (g.abelian()) return X + Y;
        break;
    }
    throw Error(ErrorCode::UnsupportedGroup, "no closed-form BCH for " + g.name());
}

AlgebraVector bch(const GroupSpec& g, const AlgebraVector& X, const AlgebraVector& Y) {
    const auto& s = g.bch_strategy();
    if (s.kind == BchStrategy::Kind::ClosedForm) return bch_closed(g, X, Y);
    double est = 0.0;
    AlgebraVector Z = bch_series(g, X, Y, s.order, &est);
    if (est > s.tolerance * std::max(1.0, Z.norm()))
        throw Error(ErrorCode::SeriesOutOfDomain, "BCH series truncation estimate too large");
    return Z;
}

double jacobian_determinant(const GroupSpec& g, const AlgebraVector& X) {
    check_dim(g, X);
    const int n = g.dim();
    if (X.norm() == 0.0 || g.abelian()) return 1.0;
    // (1 - e^{-M})/M = sum_k (-M)^k/(k+1)!
    const Eigen::MatrixXd M = ad_matrix(g, X);
    Eigen::MatrixXd term = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd S = term;
    for (int k = 1; k < 400; ++k) {
        term = (-M * term) / static_cast<double>(k + 1);
        S += term;
        if (term.norm() <= 1e-18 * S.norm()) break;
    }
    return S.determinant();
}

double jacobian(const GroupSpec& g, const AlgebraVector& X) {
    check_dim(g, X);
    if (g.jacobian_strategy() == JacobianStrategy::Determinant) return jacobian_determinant(g, X);
    switch (g.family()) {
    case GroupFamily::U1:
    case GroupFamily::Torus:
        return 1.0;
    case GroupFamily::SU2: {
        const double s = sinc(X.norm());
        return s * s;
    }
    case GroupFamily::Generic:
        if (g.abelian()) return 1.0;
        break;
    }
    throw Error(ErrorCode::UnsupportedGroup, "no closed-form Jacobian for " + g.name());
}

TorusBasis torus_basis_at(const GroupSpec& g, const AlgebraVector& X) {
    check_dim(g, X);
    if (g.abelian()) {
        // Abelian: every element is central, and the lattice basis is fixed.
        TorusBasis tb{g.torus_generators(), X[0]};
        if (tb.basis.empty()) throw Error(ErrorCode::UnsupportedGroup, "group has no torus data");
        return tb;
    }
    if (g.family() != GroupFamily::SU2)
        throw Error(ErrorCode::UnsupportedGroup, "torus basis is only catalogued for su2 and tori");
    const double r = X.norm();
    const double k = r / kPi;
    if (r < 1e-12 || std::abs(k - std::round(k)) < 1e-12)
        throw Error(ErrorCode::DegenerateElement, "X exponentiates to +-I");
    return TorusBasis{{X * (1.0 / r)}, r};
}

std::vector<AlgebraVector> logs_of(const GroupSpec& g, const AlgebraVector& X, BranchWindow w) {
    if (w.hi < w.lo) throw Error(ErrorCode::InvalidArgument, "empty branch window");
    const TorusBasis tb = torus_basis_at(g, X);
    const int r = static_cast<int>(tb.basis.size());
    std::vector<AlgebraVector> out;
    std::vector<int> idx(r, w.lo);
    while (true) {
        AlgebraVector Y = X;
        for (int i = 0; i < r; ++i) Y = Y + tb.basis[i] * (2.0 * kPi * idx[i]);
        out.push_back(std::move(Y));
        int i = r - 1;
        while (i >= 0 && idx[i] == w.hi) idx[i--] = w.lo;
        if (i < 0) break;
        ++idx[i];
    }
    return out;
}

} // namespace ncf
