#include "ncf/functions.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>

#include "ncf/error.hpp"

namespace ncf {

namespace {

std::string short_number(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

constexpr double kPi = std::numbers::pi;

// Generic probe for functions without an analytic decay bound: the max of
// |psi| over a spread of directions on a few shells at and beyond R.
double probe_decay(const PositionFunction::Eval& f, int n, double R) {
    double m = 0.0;
    const int dirs = n == 1 ? 2 : 26;
    for (double s : {1.0, 1.25, 1.5, 2.0, 3.0}) {
        for (int k = 0; k < dirs; ++k) {
            AlgebraVector X = AlgebraVector::zero(n);
            if (n == 1) {
                X.c[0] = k == 0 ? 1.0 : -1.0;
            } else {
                // Fibonacci-spiral directions in the first three coordinates.
                const double z = 1.0 - 2.0 * (k + 0.5) / dirs;
                const double ph = k * kPi * (3.0 - std::sqrt(5.0));
                const double rr = std::sqrt(1.0 - z * z);
                X.c[0] = rr * std::cos(ph);
                X.c[1] = rr * std::sin(ph);
                if (n >= 3) X.c[2] = z;
                X.c.normalize();
            }
            X.c *= s * R;
            try {
                m = std::max(m, std::abs(f(X)));
            } catch (const Error&) {
            }
        }
    }
    return m;
}

double gl_integral(const std::function<double(double)>& f, double a, double b, int n) {
    const Rule q = gauss_legendre(n, a, b);
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += q.weights[i] * f(q.nodes[i]);
    return s;
}

std::optional<double> builtin_arg(const std::string& text, const std::string& name) {
    if (text.rfind(name + "(", 0) != 0 || text.back() != ')') return std::nullopt;
    const std::string inner = text.substr(name.size() + 1, text.size() - name.size() - 2);
    try {
        std::size_t used = 0;
        const double v = std::stod(inner, &used);
        if (used == inner.size()) return v;
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::InvalidArgument, "bad argument to " + name + ": '" + inner + "'");
}

} // namespace

cd SampledGrid::at(const AlgebraVector& X) const {
    const int n = static_cast<int>(axes.size());
    if (X.dim() != n) throw Error(ErrorCode::InvalidDimension, "grid dimension differs from point");
    std::vector<int> base(n);
    std::vector<double> frac(n);
    for (int i = 0; i < n; ++i) {
        const auto& a = axes[i];
        if (X[i] < a.lo || X[i] > a.hi) return 0.0;
        if (a.count == 1) {
            base[i] = 0;
            frac[i] = 0.0;
            continue;
        }
        const double t = (X[i] - a.lo) / (a.hi - a.lo) * (a.count - 1);
        base[i] = std::min(static_cast<int>(std::floor(t)), a.count - 2);
        frac[i] = t - base[i];
    }
    cd out = 0.0;
    for (int corner = 0; corner < (1 << n); ++corner) {
        double w = 1.0;
        std::size_t idx = 0;
        for (int i = 0; i < n; ++i) {
            const int bit = (corner >> i) & 1;
            if (axes[i].count == 1 && bit) {
                w = 0.0;
                break;
            }
            w *= bit ? frac[i] : 1.0 - frac[i];
            idx = idx * axes[i].count + base[i] + bit;
        }
        if (w != 0.0) out += w * values[idx];
    }
    return out;
}

void SampledGrid::write_csv(std::ostream& os) const {
    static const char* names[] = {"x", "y", "z"};
    const int n = static_cast<int>(axes.size());
    for (int i = 0; i < n; ++i) os << (i < 3 ? names[i] : ("x" + std::to_string(i)).c_str()) << ',';
    os << "re,im\n";
    std::vector<int> idx(n, 0);
    os.precision(17);
    for (std::size_t k = 0; k < values.size(); ++k) {
        for (int i = 0; i < n; ++i) os << axes[i].node(idx[i]) << ',';
        os << values[k].real() << ',' << values[k].imag() << '\n';
        for (int i = n - 1; i >= 0; --i) {
            if (++idx[i] < axes[i].count) break;
            idx[i] = 0;
        }
    }
}

SampledGrid SampledGrid::read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw Error(ErrorCode::ParseError, "empty CSV");
    std::vector<std::string> header;
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) header.push_back(cell);
    }
    if (header.size() < 3 || header[header.size() - 2] != "re" || header.back() != "im")
        throw Error(ErrorCode::ParseError, "CSV header must end with re,im");
    const int n = static_cast<int>(header.size()) - 2;
    std::vector<std::vector<double>> rows;
    int lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> row;
        while (std::getline(ss, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw Error(ErrorCode::ParseError, "bad number on line " + std::to_string(lineno));
            }
        }
        if (static_cast<int>(row.size()) != n + 2)
            throw Error(ErrorCode::ParseError, "wrong column count on line " + std::to_string(lineno));
        rows.push_back(std::move(row));
    }
    SampledGrid g;
    std::vector<std::vector<double>> coords(n);
    for (int i = 0; i < n; ++i) {
        std::set<double> u;
        for (auto& r : rows) u.insert(r[i]);
        coords[i].assign(u.begin(), u.end());
        SampledGrid::Axis a{coords[i].front(), coords[i].back(), static_cast<int>(coords[i].size())};
        for (int k = 0; k < a.count; ++k)
            if (std::abs(a.node(k) - coords[i][k]) > 1e-9 * std::max(1.0, std::abs(a.hi - a.lo)))
                throw Error(ErrorCode::ParseError, "grid axis is not uniform");
        g.axes.push_back(a);
    }
    std::size_t total = 1;
    for (auto& a : g.axes) total *= a.count;
    if (total != rows.size()) throw Error(ErrorCode::ParseError, "grid is not rectangular");
    g.values.assign(total, 0.0);
    std::vector<bool> seen(total, false);
    for (auto& r : rows) {
        std::size_t idx = 0;
        for (int i = 0; i < n; ++i) {
            const auto it = std::lower_bound(coords[i].begin(), coords[i].end(), r[i]);
            idx = idx * g.axes[i].count + static_cast<std::size_t>(it - coords[i].begin());
        }
        if (seen[idx]) throw Error(ErrorCode::ParseError, "duplicate grid point");
        seen[idx] = true;
        g.values[idx] = cd(r[n], r[n + 1]);
    }
    return g;
}

PositionFunction PositionFunction::custom(GroupRef g, Eval f, Domain d, std::optional<Radial> radial, Decay decay,
                                          std::string label) {
    PositionFunction p;
    p.g_ = std::move(g);
    p.f_ = std::move(f);
    p.domain_ = d;
    p.radial_ = std::move(radial);
    p.decay_ = std::move(decay);
    p.label_ = std::move(label);
    if (!p.f_ && p.radial_) {
        auto r = *p.radial_;
        p.f_ = [r](const AlgebraVector& X) { return r(X.norm()); };
    }
    if (!p.f_) throw Error(ErrorCode::InvalidArgument, "function body missing");
    return p;
}

PositionFunction PositionFunction::gaussian(GroupRef g, double sigma, Domain d) {
    if (!(sigma > 0)) throw Error(ErrorCode::InvalidArgument, "gaussian width must be positive");
    const double s2 = 2.0 * sigma * sigma;
    return custom(
        std::move(g), [s2](const AlgebraVector& X) { return cd(std::exp(-X.c.squaredNorm() / s2)); }, d,
        Radial([s2](double r) { return cd(std::exp(-r * r / s2)); }),
        [s2](double R) { return std::exp(-R * R / s2); }, "gaussian(" + short_number(sigma) + ")");
}

PositionFunction PositionFunction::character(GroupRef g, int twice_lambda) {
    if (g->family() != GroupFamily::SU2) throw Error(ErrorCode::UnsupportedGroup, "characters are catalogued for su2");
    if (twice_lambda < 0) throw Error(ErrorCode::InvalidSpin, "2*lambda must be non-negative");
    return custom(
        std::move(g), [twice_lambda](const AlgebraVector& X) { return cd(character_radial(twice_lambda, X.norm())); },
        Domain::PrincipalBranch, Radial([twice_lambda](double r) { return cd(character_radial(twice_lambda, r)); }),
        nullptr, "character(" + std::to_string(twice_lambda) + ")");
}

PositionFunction PositionFunction::bump(GroupRef g, double width) {
    if (!(width > 0)) throw Error(ErrorCode::InvalidArgument, "bump width must be positive");
    const double s2 = 2.0 * width * width;
    double z = 0.0;
    if (g->family() == GroupFamily::SU2) {
        z = 4.0 * kPi * gl_integral([s2](double r) { return std::pow(std::sin(r), 2) * std::exp(-r * r / s2); }, 0.0,
                                    kPi, 400);
    } else if (g->abelian()) {
        const double one = gl_integral([s2](double x) { return std::exp(-x * x / s2); }, -kPi, kPi, 400);
        z = std::pow(one, g->dim());
    } else {
        throw Error(ErrorCode::UnsupportedGroup, "bump needs a catalogued Haar measure");
    }
    const double inv = 1.0 / z;
    return custom(
        std::move(g), [s2, inv](const AlgebraVector& X) { return cd(inv * std::exp(-X.c.squaredNorm() / s2)); },
        Domain::PrincipalBranch, Radial([s2, inv](double r) { return cd(inv * std::exp(-r * r / s2)); }), nullptr,
        "bump(" + short_number(width) + ")");
}

PositionFunction PositionFunction::from_expr(GroupRef g, const FunctionExpr& e, Domain d) {
    const int n = g->dim();
    Eval f = [e, n](const AlgebraVector& X) {
        ExprVars v;
        if (n > 0) v.x = X[0];
        if (n > 1) v.y = X[1];
        if (n > 2) v.z = X[2];
        v.r = X.norm();
        return cd(e.eval(v));
    };
    std::optional<Radial> radial;
    if (e.radial_only()) {
        radial = [e](double r) {
            ExprVars v;
            v.r = r;
            return cd(e.eval(v));
        };
    }
    return custom(std::move(g), std::move(f), d, std::move(radial), nullptr, e.source());
}

PositionFunction PositionFunction::sampled(GroupRef g, SampledGrid grid, Domain d) {
    if (static_cast<int>(grid.axes.size()) != g->dim())
        throw Error(ErrorCode::InvalidDimension, "grid dimension differs from the group");
    auto shared = std::make_shared<const SampledGrid>(std::move(grid));
    double inner = 1e300;
    for (auto& a : shared->axes) inner = std::min({inner, std::abs(a.lo), std::abs(a.hi)});
    double edge = 0.0;
    // Largest sample on the grid boundary.
    {
        const int n = static_cast<int>(shared->axes.size());
        std::vector<int> idx(n, 0);
        for (std::size_t k = 0; k < shared->values.size(); ++k) {
            bool on_edge = false;
            for (int i = 0; i < n; ++i)
                on_edge = on_edge || idx[i] == 0 || idx[i] == shared->axes[i].count - 1;
            if (on_edge) edge = std::max(edge, std::abs(shared->values[k]));
            for (int i = n - 1; i >= 0; --i) {
                if (++idx[i] < shared->axes[i].count) break;
                idx[i] = 0;
            }
        }
    }
    return custom(
        std::move(g), [shared](const AlgebraVector& X) { return shared->at(X); }, d, std::nullopt,
        [inner, edge](double R) { return R >= inner ? edge : 1e300; }, "sampled");
}

PositionFunction PositionFunction::from_spec(GroupRef g, const std::string& text, Domain d) {
    if (auto s = builtin_arg(text, "gaussian")) return gaussian(std::move(g), *s, d);
    if (auto k = builtin_arg(text, "character")) {
        if (*k != std::floor(*k)) throw Error(ErrorCode::InvalidSpin, "character takes an integer 2*lambda");
        return character(std::move(g), static_cast<int>(*k));
    }
    if (auto w = builtin_arg(text, "bump")) return bump(std::move(g), *w);
    return from_expr(std::move(g), FunctionExpr::parse(text), d);
}

cd PositionFunction::operator()(const AlgebraVector& X) const {
    check_dim(*g_, X);
    if (domain_ == Domain::PrincipalBranch && g_->family() != GroupFamily::Generic)
        return f_(reduce_to_principal(*g_, X));
    return f_(X);
}

bool PositionFunction::is_class_function() const {
    if (g_->abelian()) return true;
    return radial_.has_value();
}

double PositionFunction::decay_bound(double R) const {
    if (decay_) return decay_(R);
    return probe_decay(f_, g_->dim(), R);
}

double PositionFunction::decay_radius(double tol) const {
    double peak = std::abs(f_(AlgebraVector::zero(g_->dim())));
    peak = std::max({peak, probe_decay(f_, g_->dim(), 0.5), 1e-300});
    for (double R = 0.5; R < 4096.0; R *= 1.1) {
        if (decay_bound(R) <= tol * peak) return R;
    }
    throw Error(ErrorCode::CutoffTooSmall, "function does not decay within the probed range");
}

PositionFunction PositionFunction::scaled(cd s) const {
    PositionFunction p = *this;
    auto f = f_;
    p.f_ = [f, s](const AlgebraVector& X) { return s * f(X); };
    if (radial_) {
        auto r = *radial_;
        p.radial_ = Radial([r, s](double x) { return s * r(x); });
    }
    if (decay_) {
        auto dcy = decay_;
        const double m = std::abs(s);
        p.decay_ = [dcy, m](double R) { return m * dcy(R); };
    }
    return p;
}

PositionFunction operator+(const PositionFunction& a, const PositionFunction& b) {
    if (a.g_->name() != b.g_->name()) throw Error(ErrorCode::GroupMismatch, "functions live on different groups");
    PositionFunction p = a;
    auto fa = a.f_, fb = b.f_;
    p.f_ = [fa, fb](const AlgebraVector& X) { return fa(X) + fb(X); };
    if (a.radial_ && b.radial_) {
        auto ra = *a.radial_, rb = *b.radial_;
        p.radial_ = PositionFunction::Radial([ra, rb](double r) { return ra(r) + rb(r); });
    } else {
        p.radial_.reset();
    }
    if (a.decay_ && b.decay_) {
        auto da = a.decay_, db = b.decay_;
        p.decay_ = [da, db](double R) { return da(R) + db(R); };
    } else {
        p.decay_ = nullptr;
    }
    p.label_ = a.label_ + " + " + b.label_;
    return p;
}

} // namespace ncf
