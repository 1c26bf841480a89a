#pragma once

#include <vector>

#include <json.hpp>

#include "ncf/functions.hpp"
#include "ncf/groups.hpp"
#include "ncf/quadrature.hpp"

namespace ncf {

enum class Scheme { Symmetric, Duflo };

const char* to_string(Scheme s);
Scheme scheme_from_string(const std::string& s);

struct PlaneWaveTerm {
    cd coeff;
    AlgebraVector X;
};

// Finite sum of plane waves E(X_k, p). Terms closer than kMergeTol are
// coalesced on insertion.
class PlaneWaveSum {
public:
    static constexpr double kMergeTol = 1e-12;

    PlaneWaveSum(GroupRef g, Scheme s) : g_(std::move(g)), scheme_(s) {}
    static PlaneWaveSum wave(GroupRef g, Scheme s, const AlgebraVector& X, cd coeff = 1.0);

    void add(cd coeff, const AlgebraVector& X);

    const GroupRef& group() const { return g_; }
    Scheme scheme() const { return scheme_; }
    const std::vector<PlaneWaveTerm>& terms() const { return terms_; }

    nlohmann::ordered_json to_json() const;
    static PlaneWaveSum from_json(const nlohmann::json& j, GroupRef g);

private:
    GroupRef g_;
    Scheme scheme_;
    std::vector<PlaneWaveTerm> terms_;
};

cd planewave_eval(const PlaneWaveSum& w, const MomentumVector& p);
PlaneWaveSum star(const PlaneWaveSum& a, const PlaneWaveSum& b);
PlaneWaveSum star_conjugate(const PlaneWaveSum& w);

// Momentum function sampled on a rectangular grid over a bounded box.
struct SampledMomentum {
    SampledGrid grid;
    cd at(const MomentumVector& p) const { return grid.at(AlgebraVector(p.c)); }
    double p_max() const;
};

// int d^n p / (2 pi)^n conj(Phi) Psi by the trapezoid rule on the shared
// grid. The samples must have decayed at the box edge to quad.target_rel_tol
// of their peak, else CutoffTooSmall.
cd pairing_duflo(const SampledMomentum& phi, const SampledMomentum& psi, const QuadratureSpec& quad);

} // namespace ncf
