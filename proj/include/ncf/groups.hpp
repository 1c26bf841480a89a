#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "ncf/algebra.hpp"

namespace ncf {

using cd = std::complex<double>;

struct GroupPoint {
    GroupRef group;
    AlgebraVector principal_log;
    std::optional<Eigen::Matrix2cd> matrix;  // SU(2)
    std::vector<cd> phases;                  // U(1) / torus components
};

// Spin labels are stored doubled so half-integers stay exact.
struct SpinLabel {
    int twice_lambda = 0;
    explicit SpinLabel(int two_lambda);
    int dimension() const { return twice_lambda + 1; }
    double lambda() const { return 0.5 * twice_lambda; }
};

enum class GroupKind { U1, SU2, Torus };
GroupRef make_group(GroupKind kind, int torus_rank = 1);
// Accepts "u1", "su2", "torusN".
GroupRef make_group(const std::string& name);

GroupPoint exp_map(const GroupRef& g, const AlgebraVector& X);
AlgebraVector log_principal(const GroupPoint& pt);
GroupPoint multiply(const GroupPoint& a, const GroupPoint& b);
GroupPoint inverse(const GroupPoint& a);

// exp(i X.sigma) for the defining representation.
Eigen::Matrix2cd su2_matrix(const AlgebraVector& X);
// Branch-reduced copy of X (SU(2): norm in [0, pi]; torus: coordinates in (-pi, pi]).
AlgebraVector reduce_to_principal(const GroupSpec& g, const AlgebraVector& X);

double character(SpinLabel lam, const AlgebraVector& X);
// Same, from the radial coordinate r = ||X||.
double character_radial(int twice_lambda, double r);
Eigen::MatrixXcd spin_rep(SpinLabel lam, const AlgebraVector& X);

} // namespace ncf
