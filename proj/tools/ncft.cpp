// Command-line front end for the ncf library.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "ncf/error.hpp"
#include "ncf/fourier.hpp"
#include "ncf/poisson.hpp"
#include "ncf/verify.hpp"

using namespace ncf;
using ojson = nlohmann::ordered_json;

namespace {

constexpr int kExitFailed = 1;
constexpr int kExitError = 2;

struct Global {
    std::optional<int> quad_radial, quad_angular;
    std::optional<double> cutoff, tol;
    std::string format = "json";
    std::string out;
    std::uint64_t seed = 20240607;
    bool timings = false;
};

QuadratureSpec quad_from(const Global& g) {
    QuadratureSpec q;
    if (g.quad_radial) q.radial_order = *g.quad_radial;
    if (g.quad_angular) q.theta_order = q.phi_order = *g.quad_angular;
    if (g.cutoff) {
        q.cutoff_radius = *g.cutoff;
        q.fixed_cutoff = true;
    }
    if (g.tol) q.target_rel_tol = *g.tol;
    q.validate();
    return q;
}

AlgebraVector algebra(const std::vector<double>& v, const GroupSpec& g, const char* what) {
    if (static_cast<int>(v.size()) != g.dim())
        throw Error(ErrorCode::InvalidDimension, std::string(what) + " needs " + std::to_string(g.dim()) + " components");
    return AlgebraVector(Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())));
}

ojson complex_json(cd z) { return {{"re", json_number(z.real())}, {"im", json_number(z.imag())}}; }

ojson vec_json(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

std::string shortest(double v) {
    std::ostringstream os;
    os << json_number(v).dump();
    return os.str();
}

// Flat objects become a two-line CSV; nested values are written as JSON.
void write_csv_row(std::ostream& os, const ojson& j) {
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
        os << (first ? "" : ",") << it.key();
        first = false;
    }
    os << '\n';
    first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
        std::string cell = it->is_string() ? it->get<std::string>() : it->dump();
        if (cell.find_first_of(",\"") != std::string::npos) {
            std::string q = "\"";
            for (char c : cell) q += c == '"' ? std::string("\"\"") : std::string(1, c);
            cell = q + "\"";
        }
        os << (first ? "" : ",") << cell;
        first = false;
    }
    os << '\n';
}

void emit(const Global& g, const ojson& j) {
    std::ofstream file;
    if (!g.out.empty()) {
        file.open(g.out);
        if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write " + g.out);
    }
    std::ostream& os = g.out.empty() ? std::cout : file;
    if (g.format == "csv")
        write_csv_row(os, j);
    else
        os << j.dump(2) << '\n';
}

int cmd_info(const Global& gl, const std::string& name) {
    const GroupRef g = make_group(name);
    ojson j;
    j["group"] = g->to_json();
    auto samples = ojson::array();
    const double top = g->principal_radius().value_or(std::numbers::pi);
    for (int k = 0; k <= 4; ++k) {
        AlgebraVector X = AlgebraVector::zero(g->dim());
        X.c[0] = top * k / 4.0;
        samples.push_back({{"X", vec_json(X.c)}, {"J", jacobian(*g, X)}});
    }
    j["jacobian_samples"] = std::move(samples);
    if (gl.format == "csv") {
        ojson flat;
        flat["name"] = g->name();
        flat["dim"] = g->dim();
        flat["rank"] = g->rank();
        for (auto& s : j["jacobian_samples"]) flat["J(" + shortest(s["X"][0].get<double>()) + ")"] = s["J"];
        emit(gl, flat);
    } else {
        emit(gl, j);
    }
    return 0;
}

int cmd_bch(const Global& gl, const std::string& name, const std::vector<double>& x, const std::vector<double>& y,
            int order) {
    const GroupRef g = make_group(name);
    const AlgebraVector X = algebra(x, *g, "--x"), Y = algebra(y, *g, "--y");
    const AlgebraVector closed = bch_closed(*g, X, Y);
    double est = 0.0;
    const AlgebraVector series = bch_series(*g, X, Y, order, &est);
    ojson j;
    j["group"] = g->name();
    j["closed_form"] = vec_json(closed.c);
    j["series"] = vec_json(series.c);
    j["series_order"] = order;
    j["truncation_estimate"] = est;
    j["discrepancy"] = (closed.c - series.c).norm();
    emit(gl, j);
    return 0;
}

int cmd_transform(const Global& gl, const std::string& name, const std::string& func, const std::vector<double>& pv,
                  const std::string& mode) {
    const GroupRef g = make_group(name);
    const QuadratureSpec q = quad_from(gl);
    if (static_cast<int>(pv.size()) != g->dim())
        throw Error(ErrorCode::InvalidDimension, "--p needs " + std::to_string(g->dim()) + " components");
    const MomentumVector p(Eigen::Map<const Eigen::VectorXd>(pv.data(), static_cast<Eigen::Index>(pv.size())));
    ojson j;
    j["group"] = g->name();
    j["function"] = func;
    j["p"] = vec_json(p.c);
    j["mode"] = mode;
    cd v;
    if (mode == "ncft") {
        v = ncft(PositionFunction::from_spec(g, func, Domain::WholeAlgebra), p, q);
    } else if (mode == "coeff") {
        v = fourier_coeff(PositionFunction::from_spec(g, func, Domain::PrincipalBranch), p, q);
    } else if (mode == "class") {
        v = fourier_coeff_class(PositionFunction::from_spec(g, func, Domain::PrincipalBranch), p.norm(), q);
    } else {
        throw Error(ErrorCode::InvalidArgument, "mode must be ncft, coeff or class");
    }
    j["value"] = complex_json(v);
    emit(gl, j);
    return 0;
}

int cmd_character(const Global& gl, int two_lambda, double p_norm) {
    const GroupRef g = make_group(GroupKind::SU2);
    QuadratureSpec q = quad_from(gl);
    const double tol = gl.tol.value_or(1e-8);
    const cd v = fourier_coeff_class(PositionFunction::character(g, two_lambda), p_norm, q);
    const bool inside = p_norm >= two_lambda && p_norm < two_lambda + 2;
    const double predicted = inside ? std::numbers::pi * std::numbers::pi / p_norm : 0.0;
    const double residual = inside ? std::abs(v - predicted) / predicted : std::abs(v);
    ojson j;
    j["two_lambda"] = two_lambda;
    j["p_norm"] = p_norm;
    j["computed"] = json_number(v.real());
    j["predicted"] = predicted;
    j["residual"] = residual;
    j["tolerance"] = tol;
    j["passed"] = residual <= tol;
    emit(gl, j);
    return residual <= tol ? 0 : kExitFailed;
}

int cmd_poisson(const Global& gl, const std::string& name, const std::string& func, const std::vector<double>& x,
                const std::string& derivative) {
    const GroupRef g = make_group(name);
    QuadratureSpec q = quad_from(gl);
    PoissonCase c{PositionFunction::from_spec(g, func, Domain::WholeAlgebra), algebra(x, *g, "--x"), std::nullopt, q, DerivativeMode::Analytic, std::nullopt, 1e-12};
    if (derivative == "fd")
        c.derivative = DerivativeMode::FiniteDifference;
    else if (derivative != "analytic")
        throw Error(ErrorCode::InvalidArgument, "derivative must be analytic or fd");
    const PoissonResult r = poisson_generic(c);
    emit(gl, to_json(c, r, gl.timings));
    return 0;
}

int cmd_verify(const Global& gl, const std::string& suite) {
    VerifyOptions opt;
    opt.seed = gl.seed;
    opt.quad_radial = gl.quad_radial;
    opt.quad_angular = gl.quad_angular;
    opt.on_case = [](const VerificationCase& c) {
        std::cerr << (c.passed ? "PASS " : "FAIL ") << c.id << "  residual=" << shortest(c.residual)
                  << "  tol=" << shortest(c.tolerance) << '\n';
    };
    const VerificationReport rep = run_suite(suite, opt);
    std::ofstream file;
    if (!gl.out.empty()) {
        file.open(gl.out);
        if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write " + gl.out);
    }
    std::ostream& os = gl.out.empty() ? std::cout : file;
    if (gl.format == "csv")
        rep.write_csv(os, gl.timings);
    else
        os << rep.to_json(gl.timings).dump(2) << '\n';
    return rep.all_passed() ? 0 : kExitFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Noncommutative Fourier analysis on u(1), tori and SU(2)"};
    app.require_subcommand(1);
    app.fallthrough();

    Global gl;
    app.add_option("--quad-radial", gl.quad_radial, "radial / box quadrature order");
    app.add_option("--quad-angular", gl.quad_angular, "angular quadrature order");
    app.add_option("--cutoff", gl.cutoff, "cutoff radius");
    app.add_option("--tol", gl.tol, "target relative tolerance");
    app.add_option("--format", gl.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", gl.out, "write output to this path");
    app.add_option("--seed", gl.seed, "random seed for verification sampling");
    app.add_flag("--timings", gl.timings, "include wall times in reports");

    std::string group, func, mode = "ncft", suite = "all", derivative = "analytic";
    std::vector<double> x, y, p;
    int order = 6, two_lambda = 0;
    double p_norm = 0.0;

    auto* info = app.add_subcommand("info", "print a group's data and Jacobian samples");
    info->add_option("group", group, "u1, su2 or torusN")->required();

    auto* bchc = app.add_subcommand("bch", "compose two algebra elements");
    bchc->add_option("group", group)->required();
    bchc->add_option("--x", x)->required()->delimiter(',');
    bchc->add_option("--y", y)->required()->delimiter(',');
    bchc->add_option("--order", order, "series degree");

    auto* tr = app.add_subcommand("transform", "Fourier transform or coefficient at one momentum");
    tr->add_option("group", group)->required();
    tr->add_option("--func", func, "expression in x, y, z, r or gaussian(s), character(k), bump(w)")->required();
    tr->add_option("--p", p)->required()->delimiter(',');
    tr->add_option("--mode", mode, "ncft, coeff or class");

    auto* ch = app.add_subcommand("character", "character coefficient against the shell prediction");
    ch->add_option("--two-lambda", two_lambda)->required();
    ch->add_option("--p-norm", p_norm)->required();

    auto* po = app.add_subcommand("poisson", "both sides of the Poisson summation formula");
    po->add_option("group", group)->required();
    po->add_option("--func", func)->required();
    po->add_option("--x", x)->required()->delimiter(',');
    po->add_option("--derivative", derivative, "analytic or fd");

    auto* ve = app.add_subcommand("verify", "run an acceptance suite");
    ve->add_option("--suite", suite, "all, core, su2 or duflo");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitError;
    }

    try {
        if (*info) return cmd_info(gl, group);
        if (*bchc) return cmd_bch(gl, group, x, y, order);
        if (*tr) return cmd_transform(gl, group, func, p, mode);
        if (*ch) return cmd_character(gl, two_lambda, p_norm);
        if (*po) return cmd_poisson(gl, group, func, x, derivative);
        if (*ve) return cmd_verify(gl, suite);
    } catch (const SyntaxError& e) {
        std::cerr << "error: " << e.what() << " (offset " << e.offset() << ")\n";
        return kExitError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
