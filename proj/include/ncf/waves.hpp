#pragma once

#include <vector>

#include "ncf/functions.hpp"
#include "ncf/starprod.hpp"

namespace ncf {

// Infinite regularization factors are never numbers. zr_exponent counts the
// powers of sqrt|Z| stripped from a value.
struct Normalization {
    enum class Convention { Reduced } convention = Convention::Reduced;
    int zr_exponent = 0;
};

constexpr double kSupportTol = 1e-9;

struct ModeSupport {
    GroupRef group;
    AlgebraVector X;
    std::vector<AlgebraVector> basis;  // a_i(X)
    // Rank 1 non-Abelian: the plane labels m. Torus: lattice points.
    std::vector<std::vector<int>> labels;

    bool contains(const MomentumVector& p) const;
};

// e^{-i<p,X>} on the support <p, a_i(X)> in Z, else 0. Duflo divides by
// J^{1/2} at the principal representative.
cd invariant_wave_reduced(const GroupSpec& g, const AlgebraVector& X, const MomentumVector& p, Scheme scheme);

ModeSupport support_planes(const GroupRef& g, const AlgebraVector& X, double p_max);

int spin_floor(const MomentumVector& p);
int spin_floor(double p_norm);

struct ProjectionResult {
    cd value;
    double tail = 0.0;  // size of the shell just outside the window
};

// Sum of psi0(X + 2 pi n^i a_i(X)) over the window. WindowTooSmall when the
// next shell out exceeds tol relative to the sum (or to tol itself when the
// sum vanishes).
ProjectionResult project_position_checked(const PositionFunction& psi0, const AlgebraVector& X, BranchWindow w,
                                          double tol = 1e-12);
cd project_position(const PositionFunction& psi0, const AlgebraVector& X, BranchWindow w, double tol = 1e-12);
// Smallest symmetric window {-N..N} whose tail passes.
BranchWindow auto_window(const PositionFunction& psi0, const AlgebraVector& X, double tol = 1e-12,
                         int max_n = 64);

// Uniform average of e^{-i<p, X + 2 pi n a_1(X)>} over |n| <= N.
cd cesaro_branch_sum(const GroupSpec& g, const AlgebraVector& X, const MomentumVector& p, int N);

} // namespace ncf
