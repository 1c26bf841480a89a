#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ncf/expr.hpp"
#include "ncf/groups.hpp"
#include "ncf/quadrature.hpp"

namespace ncf {

enum class Domain { PrincipalBranch, WholeAlgebra };

// Rectangular grid, row-major with the last axis fastest. Evaluated by
// multilinear interpolation, zero outside the box.
struct SampledGrid {
    struct Axis {
        double lo = 0, hi = 0;
        int count = 0;
        double node(int i) const { return count == 1 ? lo : lo + (hi - lo) * i / (count - 1); }
    };
    std::vector<Axis> axes;
    std::vector<cd> values;

    cd at(const AlgebraVector& X) const;
    void write_csv(std::ostream& os) const;
    // Header: coordinate names then re, im. Rows may come in any order but
    // must cover a full rectangular grid.
    static SampledGrid read_csv(std::istream& is);
};

class PositionFunction {
public:
    using Eval = std::function<cd(const AlgebraVector&)>;
    using Radial = std::function<cd(double)>;
    // sup |psi| outside radius R.
    using Decay = std::function<double(double)>;

    // exp(-|X|^2 / (2 sigma^2)).
    static PositionFunction gaussian(GroupRef g, double sigma, Domain d = Domain::WholeAlgebra);
    // chi_lambda on SU(2).
    static PositionFunction character(GroupRef g, int twice_lambda);
    // Gaussian of the given width on the principal branch, normalized to unit
    // Haar integral.
    static PositionFunction bump(GroupRef g, double width);
    // Variables x, y, z are the first three coordinates, r the norm. A tree
    // that only references r is radial (a class function on SU(2)).
    static PositionFunction from_expr(GroupRef g, const FunctionExpr& e, Domain d);
    static PositionFunction sampled(GroupRef g, SampledGrid grid, Domain d = Domain::WholeAlgebra);
    static PositionFunction custom(GroupRef g, Eval f, Domain d, std::optional<Radial> radial = std::nullopt,
                                   Decay decay = nullptr, std::string label = "custom");
    // Builtin families by call syntax: gaussian(s), character(k), bump(w);
    // anything else is parsed as an expression.
    static PositionFunction from_spec(GroupRef g, const std::string& text, Domain d);

    cd operator()(const AlgebraVector& X) const;
    const GroupRef& group() const { return g_; }
    Domain domain() const { return domain_; }
    bool is_class_function() const;
    const std::optional<Radial>& radial() const { return radial_; }
    const std::string& label() const { return label_; }

    double decay_bound(double R) const;
    // Smallest probed radius at which the decay bound drops below tol * |psi(0)|-scale.
    double decay_radius(double tol) const;

    PositionFunction scaled(cd s) const;
    friend PositionFunction operator+(const PositionFunction& a, const PositionFunction& b);

private:
    GroupRef g_;
    Eval f_;
    Domain domain_ = Domain::WholeAlgebra;
    std::optional<Radial> radial_;
    Decay decay_;
    std::string label_;
};

} // namespace ncf
