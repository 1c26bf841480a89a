#pragma once

// Independent reference computations for the unit tests. Nothing here calls
// into the library's closed forms.

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <complex>
#include <random>

namespace oracle {

using cd = std::complex<double>;

inline Eigen::Matrix2cd pauli(int k) {
    Eigen::Matrix2cd s;
    if (k == 0) s << 0, 1, 1, 0;
    if (k == 1) s << 0, cd(0, -1), cd(0, 1), 0;
    if (k == 2) s << 1, 0, 0, -1;
    return s;
}

// Dense exponential of i X.sigma.
inline Eigen::Matrix2cd su2_exp(const Eigen::Vector3d& x) {
    Eigen::Matrix2cd h = Eigen::Matrix2cd::Zero();
    for (int k = 0; k < 3; ++k) h += cd(0, x[k]) * pauli(k);
    return h.exp();
}

// Principal matrix logarithm, decomposed on t_k = i sigma_k.
inline Eigen::Vector3d su2_log(const Eigen::Matrix2cd& m) {
    const Eigen::Matrix2cd l = m.log();
    Eigen::Vector3d x;
    for (int k = 0; k < 3; ++k) x[k] = ((pauli(k) * l).trace() / cd(0, 2)).real();
    return x;
}

inline Eigen::Vector3d random_in_ball(std::mt19937_64& rng, double radius) {
    std::normal_distribution<double> n(0.0, 1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Eigen::Vector3d v(n(rng), n(rng), n(rng));
    return v.normalized() * radius * std::cbrt(u(rng));
}

// Composite Simpson on [a, b] with m (even) panels.
template <class F>
double simpson(F f, double a, double b, int m) {
    const double h = (b - a) / m;
    double s = f(a) + f(b);
    for (int i = 1; i < m; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

} // namespace oracle
