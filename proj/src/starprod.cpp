#include "ncf/starprod.hpp"

#include <cmath>
#include <numbers>

#include "ncf/error.hpp"

namespace ncf {

const char* to_string(Scheme s) { return s == Scheme::Symmetric ? "symmetric" : "duflo"; }

Scheme scheme_from_string(const std::string& s) {
    if (s == "symmetric") return Scheme::Symmetric;
    if (s == "duflo") return Scheme::Duflo;
    throw Error(ErrorCode::InvalidArgument, "unknown scheme '" + s + "'");
}

PlaneWaveSum PlaneWaveSum::wave(GroupRef g, Scheme s, const AlgebraVector& X, cd coeff) {
    PlaneWaveSum w(std::move(g), s);
    w.add(coeff, X);
    return w;
}

void PlaneWaveSum::add(cd coeff, const AlgebraVector& X) {
    check_dim(*g_, X);
    for (auto& t : terms_) {
        if ((t.X.c - X.c).norm() <= kMergeTol) {
            t.coeff += coeff;
            return;
        }
    }
    terms_.push_back({coeff, X});
}

nlohmann::ordered_json PlaneWaveSum::to_json() const {
    nlohmann::ordered_json j;
    j["scheme"] = to_string(scheme_);
    j["group"] = g_->name();
    auto arr = nlohmann::ordered_json::array();
    for (auto& t : terms_) {
        nlohmann::ordered_json e;
        e["re"] = t.coeff.real();
        e["im"] = t.coeff.imag();
        e["X"] = std::vector<double>(t.X.c.data(), t.X.c.data() + t.X.dim());
        arr.push_back(std::move(e));
    }
    j["terms"] = std::move(arr);
    return j;
}

PlaneWaveSum PlaneWaveSum::from_json(const nlohmann::json& j, GroupRef g) {
    try {
        PlaneWaveSum w(std::move(g), scheme_from_string(j.at("scheme").get<std::string>()));
        for (auto& e : j.at("terms")) {
            const auto xs = e.at("X").get<std::vector<double>>();
            w.add(cd(e.at("re").get<double>(), e.at("im").get<double>()),
                  AlgebraVector(Eigen::Map<const Eigen::VectorXd>(xs.data(), static_cast<Eigen::Index>(xs.size()))));
        }
        return w;
    } catch (const nlohmann::json::exception& ex) {
        throw Error(ErrorCode::ParseError, ex.what());
    }
}

cd planewave_eval(const PlaneWaveSum& w, const MomentumVector& p) {
    check_dim(*w.group(), p);
    cd s = 0.0;
    for (auto& t : w.terms()) {
        cd e = std::polar(1.0, -pairing(p, t.X));
        if (w.scheme() == Scheme::Duflo) {
            const double J = jacobian(*w.group(), t.X);
            if (J <= 1e-14) throw Error(ErrorCode::JacobianZero, "Duflo plane wave at a zero of J");
            e /= std::sqrt(J);
        }
        s += t.coeff * e;
    }
    return s;
}

PlaneWaveSum star(const PlaneWaveSum& a, const PlaneWaveSum& b) {
    if (a.scheme() != b.scheme()) throw Error(ErrorCode::SchemeMismatch, "star of different schemes");
    if (a.group()->name() != b.group()->name()) throw Error(ErrorCode::GroupMismatch, "star across groups");
    PlaneWaveSum out(a.group(), a.scheme());
    for (auto& s : a.terms())
        for (auto& t : b.terms()) {
            // Both schemes compose the labels by BCH; the Duflo J^{-1/2}
            // weight lives in the evaluation rule, so coefficients just multiply.
            out.add(s.coeff * t.coeff, bch(*a.group(), s.X, t.X));
        }
    return out;
}

PlaneWaveSum star_conjugate(const PlaneWaveSum& w) {
    PlaneWaveSum out(w.group(), w.scheme());
    for (auto& t : w.terms()) out.add(std::conj(t.coeff), -t.X);
    return out;
}

double SampledMomentum::p_max() const {
    double m = 0.0;
    for (auto& a : grid.axes) m = std::max({m, std::abs(a.lo), std::abs(a.hi)});
    return m;
}

cd pairing_duflo(const SampledMomentum& phi, const SampledMomentum& psi, const QuadratureSpec& quad) {
    const auto& A = phi.grid.axes;
    const auto& B = psi.grid.axes;
    bool same = A.size() == B.size();
    for (std::size_t i = 0; same && i < A.size(); ++i)
        same = A[i].lo == B[i].lo && A[i].hi == B[i].hi && A[i].count == B[i].count;
    if (!same) throw Error(ErrorCode::GridMismatch, "momentum samples live on different grids");
    const int n = static_cast<int>(A.size());
    double cell = 1.0;
    for (auto& a : A) {
        if (a.count < 2) throw Error(ErrorCode::GridMismatch, "grid axis needs at least two nodes");
        cell *= (a.hi - a.lo) / (a.count - 1);
    }
    // Trapezoid weights; for samples that have decayed at the edge this is
    // spectrally accurate.
    cd sum = 0.0;
    double peak = 0.0, edge = 0.0;
    std::vector<int> idx(n, 0);
    for (std::size_t k = 0; k < phi.grid.values.size(); ++k) {
        double w = cell;
        bool on_edge = false;
        for (int i = 0; i < n; ++i)
            if (idx[i] == 0 || idx[i] == A[i].count - 1) {
                w *= 0.5;
                on_edge = true;
            }
        const double m = std::max(std::abs(phi.grid.values[k]), std::abs(psi.grid.values[k]));
        peak = std::max(peak, m);
        if (on_edge) edge = std::max(edge, m);
        sum += w * std::conj(phi.grid.values[k]) * psi.grid.values[k];
        for (int i = n - 1; i >= 0; --i) {
            if (++idx[i] < A[i].count) break;
            idx[i] = 0;
        }
    }
    if (edge > quad.target_rel_tol * peak)
        throw Error(ErrorCode::CutoffTooSmall, "momentum samples have not decayed at the grid edge");
    return sum / std::pow(2.0 * std::numbers::pi, n);
}

} // namespace ncf
