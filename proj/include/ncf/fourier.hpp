#pragma once

#include <map>
#include <variant>
#include <vector>

#include "ncf/functions.hpp"
#include "ncf/starprod.hpp"
#include "ncf/waves.hpp"

namespace ncf {

// Reduced coefficients on the integer lattice of u(1) / torus(r).
struct LatticeCoefficients {
    GroupRef group;
    std::map<std::vector<int>, cd> values;

    cd at(const std::vector<int>& n) const;
};

// Radial SU(2) coefficient data constant on the shells j <= ||p|| < j+1:
// Phi(p) = amplitude[j] / ||p||, in the given scheme's convention.
struct ShellCoefficients {
    Scheme scheme = Scheme::Symmetric;
    std::vector<cd> amplitude;

    cd at(double p_norm) const;
};

struct MomentumFunction {
    std::variant<PlaneWaveSum, SampledMomentum, LatticeCoefficients, ShellCoefficients> data;
    Normalization norm;
};

// int J e^{-i<p,X>} psi over the algebra, truncated at the decay radius.
// Radial functions on su(2) use the one-dimensional reduction.
cd ncft(const PositionFunction& psi, const MomentumVector& p, const QuadratureSpec& quad);
// Same, always through the full n-dimensional rule (cross-check).
cd ncft_full(const PositionFunction& psi, const MomentumVector& p, const QuadratureSpec& quad);
// Radius used to truncate the transform integral.
double ncft_cutoff(const PositionFunction& psi, const QuadratureSpec& quad);

cd fourier_coeff(const PositionFunction& psi, const MomentumVector& p, const QuadratureSpec& quad);
cd fourier_coeff_class(const PositionFunction& psi, double p_norm, const QuadratureSpec& quad);

// Shell amplitudes c_j for j < shells of a class function on SU(2).
ShellCoefficients class_shell_coefficients(const PositionFunction& psi, Scheme scheme, int shells);
// Closed-form shell data of chi_lambda in the symmetric scheme: pi^2 on the
// two shells 2 lambda and 2 lambda + 1. Direct evaluation gives the same
// pattern for half-integer lambda, overlapping the neighbouring spins.
ShellCoefficients character_shell_data(int twice_lambda);
// Lattice coefficients of a function on u(1)/torus for |n_i| <= n_max.
LatticeCoefficients lattice_coefficients(const PositionFunction& psi, int n_max, const QuadratureSpec& quad);

cd inverse_series_nostar(const MomentumFunction& phi, const GroupRef& g, const AlgebraVector& X, Scheme scheme,
                         const QuadratureSpec& quad);

double parseval_gap(const PositionFunction& phi, const PositionFunction& psi, const QuadratureSpec& quad);
// <phi|psi> over G with the Haar measure.
cd position_pairing(const PositionFunction& phi, const PositionFunction& psi, const QuadratureSpec& quad);
// The same pairing computed on the momentum side.
cd momentum_pairing(const PositionFunction& phi, const PositionFunction& psi, const QuadratureSpec& quad);

PositionFunction translate_left(const PositionFunction& psi, const AlgebraVector& Y);

cd convolve_position(const PositionFunction& phi, const PositionFunction& psi, const GroupPoint& g,
                     const QuadratureSpec& quad);
MomentumFunction convolve_momentum(const MomentumFunction& phi, const MomentumFunction& psi,
                                   const QuadratureSpec& quad);

} // namespace ncf
