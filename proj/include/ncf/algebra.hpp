#pragma once

#include <Eigen/Dense>
#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace ncf {

// Coordinates X^i of X = X^i t_i. Euclidean norm throughout.
struct AlgebraVector {
    Eigen::VectorXd c;

    AlgebraVector() = default;
    explicit AlgebraVector(Eigen::VectorXd v) : c(std::move(v)) {}
    AlgebraVector(std::initializer_list<double> xs);
    static AlgebraVector zero(int n) { return AlgebraVector(Eigen::VectorXd::Zero(n)); }

    int dim() const { return static_cast<int>(c.size()); }
    double norm() const { return c.norm(); }
    double operator[](int i) const { return c[i]; }

    AlgebraVector operator+(const AlgebraVector& o) const { return AlgebraVector(c + o.c); }
    AlgebraVector operator-(const AlgebraVector& o) const { return AlgebraVector(c - o.c); }
    AlgebraVector operator-() const { return AlgebraVector(-c); }
    AlgebraVector operator*(double s) const { return AlgebraVector(c * s); }
};

// Components p_i in the dual basis.
struct MomentumVector {
    Eigen::VectorXd c;

    MomentumVector() = default;
    explicit MomentumVector(Eigen::VectorXd v) : c(std::move(v)) {}
    MomentumVector(std::initializer_list<double> xs);

    int dim() const { return static_cast<int>(c.size()); }
    double norm() const { return c.norm(); }
    double operator[](int i) const { return c[i]; }

    MomentumVector operator+(const MomentumVector& o) const { return MomentumVector(c + o.c); }
    MomentumVector operator-(const MomentumVector& o) const { return MomentumVector(c - o.c); }
};

inline double pairing(const MomentumVector& p, const AlgebraVector& X) { return p.c.dot(X.c); }

// Catalog family selects the closed forms. Generic groups only get the
// structure-constant machinery.
enum class GroupFamily { Generic, U1, SU2, Torus };

struct BchStrategy {
    enum class Kind { ClosedForm, Series } kind = Kind::ClosedForm;
    int order = 6;
    // Series mode refuses inputs whose last two homogeneous degrees are
    // larger than this fraction of the result.
    double tolerance = 1e-2;
};

enum class JacobianStrategy { ClosedForm, Determinant };

class GroupSpec {
public:
    // Validates antisymmetry, the Jacobi identity, unimodularity and the
    // torus data. Throws InvalidStructureConstants / NotUnimodular / InvalidDimension.
    GroupSpec(std::string name, GroupFamily family, int dim, int rank,
              std::vector<double> structure_constants,
              std::vector<AlgebraVector> torus_generators, BchStrategy bch,
              JacobianStrategy jac, std::optional<double> principal_radius);

    const std::string& name() const { return name_; }
    GroupFamily family() const { return family_; }
    int dim() const { return dim_; }
    int rank() const { return rank_; }
    double c(int i, int j, int k) const { return c_[(i * dim_ + j) * dim_ + k]; }
    const std::vector<double>& structure_constants() const { return c_; }
    const std::vector<AlgebraVector>& torus_generators() const { return torus_; }
    const BchStrategy& bch_strategy() const { return bch_; }
    JacobianStrategy jacobian_strategy() const { return jac_; }
    // nullopt means unbounded.
    std::optional<double> principal_radius() const { return radius_; }
    bool abelian() const { return abelian_; }

    GroupSpec with_bch(BchStrategy s) const;
    GroupSpec with_jacobian(JacobianStrategy s) const;

    nlohmann::ordered_json to_json() const;
    static GroupSpec from_json(const nlohmann::json& j);

private:
    std::string name_;
    GroupFamily family_;
    int dim_;
    int rank_;
    std::vector<double> c_;
    std::vector<AlgebraVector> torus_;
    BchStrategy bch_;
    JacobianStrategy jac_;
    std::optional<double> radius_;
    bool abelian_ = true;
};

using GroupRef = std::shared_ptr<const GroupSpec>;

void check_dim(const GroupSpec& g, const AlgebraVector& X);
void check_dim(const GroupSpec& g, const MomentumVector& p);

AlgebraVector bracket(const GroupSpec& g, const AlgebraVector& X, const AlgebraVector& Y);
Eigen::MatrixXd ad_matrix(const GroupSpec& g, const AlgebraVector& X);

AlgebraVector bch(const GroupSpec& g, const AlgebraVector& X, const AlgebraVector& Y);
// Dynkin series through the given degree, independent of the group's strategy.
AlgebraVector bch_series(const GroupSpec& g, const AlgebraVector& X, const AlgebraVector& Y,
                         int order, double* truncation_estimate = nullptr);
// Exact composition for the catalog families.
AlgebraVector bch_closed(const GroupSpec& g, const AlgebraVector& X, const AlgebraVector& Y);

double jacobian(const GroupSpec& g, const AlgebraVector& X);
double jacobian_determinant(const GroupSpec& g, const AlgebraVector& X);

struct TorusBasis {
    std::vector<AlgebraVector> basis;
    double kappa = 0.0;
};
TorusBasis torus_basis_at(const GroupSpec& g, const AlgebraVector& X);

// Inclusive range of branch indices, applied to every torus direction.
struct BranchWindow {
    int lo = 0;
    int hi = 0;
};
std::vector<AlgebraVector> logs_of(const GroupSpec& g, const AlgebraVector& X, BranchWindow w);

} // namespace ncf
