#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "ncf/algebra.hpp"

namespace ncf {

struct QuadratureSpec {
    int radial_order = 64;
    int theta_order = 24;
    int phi_order = 24;
    std::vector<int> box_orders;  // empty: radial_order on every axis
    double cutoff_radius = 8.0;
    // Transforms over the whole algebra normally truncate where psi has
    // decayed; when set they use cutoff_radius instead.
    bool fixed_cutoff = false;
    double target_rel_tol = 1e-8;

    void validate() const;
    int box_order(int axis) const;
    nlohmann::ordered_json to_json() const;
};

struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [a, b].
Rule gauss_legendre(int n, double a, double b);
// n-point trapezoid rule on a full period [a, a + 2 pi); spectrally exact for
// trigonometric polynomials of degree < n.
Rule periodic_rule(int n, double a);

struct QuadResult {
    std::complex<double> value;
    double error = 0.0;   // |I(n) - I(n/2)|
    double scale = 0.0;   // sum of w |f|, floor for relative checks
};

// Throws QuadratureUnderResolved when error > tol * max(|value|, scale * 1e-3).
void require_resolved(const QuadResult& r, double tol, const char* what);

enum class Region { PrincipalBranch, CutoffBall };

using AlgebraIntegrand = std::function<std::complex<double>(const AlgebraVector&)>;

// SU(2)-like (dim 3, bounded principal ball): spherical r x cos(theta) x phi.
// Abelian / other: tensor box over (-pi, pi)^n or [-R, R]^n.
QuadResult integrate_algebra(const AlgebraIntegrand& f, const GroupSpec& g, const QuadratureSpec& spec,
                             bool with_jacobian, Region region = Region::PrincipalBranch);

// Polar rule over the disc of radius spec.cutoff_radius. f(rho, phi).
// PlaneCutoffTooSmall when the rim exceeds target_rel_tol * max(peak, scale_floor).
std::complex<double> integrate_plane(const std::function<std::complex<double>(double, double)>& f,
                                     const QuadratureSpec& spec, double angle_offset = 0.0,
                                     double scale_floor = 0.0);

} // namespace ncf
