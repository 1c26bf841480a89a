#pragma once

#include <optional>

#include <json.hpp>

#include "ncf/fourier.hpp"

namespace ncf {

enum class DerivativeMode {
    Analytic,          // closed radial expression (radial psi on su2)
    FiniteDifference,  // 5-point central differences with a Richardson check
};

struct PoissonCase {
    PositionFunction psi;
    AlgebraVector X;
    std::optional<BranchWindow> window;  // default: smallest passing window
    QuadratureSpec quad;
    DerivativeMode derivative = DerivativeMode::Analytic;
    std::optional<int> m_max;  // su2 plane count; default from the decay of F
    double window_tol = 1e-12;
};

struct PoissonResult {
    cd lhs, rhs;
    double residual = 0.0;
    BranchWindow window;
    int spectral_cutoff = 0;    // K (Abelian) or M (su2)
    double plane_radius = 0.0;  // su2 only
    double transform_cutoff = 0.0;
    double wall_time_ms = 0.0;
};

cd poisson_lhs(const PoissonCase& c);

// F[psi] on the integer lattice |n_i| <= K, with K from the spectral decay.
// Evaluating the Abelian right-hand side at many points reuses one table.
struct AbelianSpectrum {
    GroupRef group;
    int K = 0;
    std::vector<cd> values;  // row-major over [-K, K]^r

    static AbelianSpectrum compute(const PositionFunction& psi, const QuadratureSpec& quad);
    cd rhs_at(const AlgebraVector& X) const;
};

// Abelian right-hand side: (2 pi)^{-r} sum_n e^{i n.x} F[psi](n). Also used
// for torus(r).
cd poisson_rhs_u1(const PoissonCase& c, int* K = nullptr);
// -(1/sin^2||X||) sum_m e^{i m ||X||} int_{P_m} d^2p/(2 pi)^3 d^2_u F[psi].
cd poisson_rhs_su2(const PoissonCase& c, int* M = nullptr, double* plane_radius = nullptr);
PoissonResult poisson_generic(const PoissonCase& c);

nlohmann::ordered_json to_json(const PoissonCase& c, const PoissonResult& r, bool with_timing);

// Radial transform data of a radial su2 function: F, F'/s and F'' at s.
struct RadialTransform {
    // Gauss-Legendre of quad.radial_order nodes up to the transform cutoff.
    RadialTransform(const PositionFunction& psi, const QuadratureSpec& quad);
    double cutoff = 0.0;
    cd F(double s) const;
    cd dF_over_s(double s) const;
    cd d2F(double s) const;
    // d^2/du^2 F at the point with component m along u and transverse distance rho.
    cd d2u(double m, double rho) const;

private:
    std::vector<double> r_, w_;  // w includes 4 pi sin^2 r
    std::vector<cd> psi_;
};

} // namespace ncf
