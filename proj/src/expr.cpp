#include "ncf/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

#include "ncf/error.hpp"

namespace ncf {

namespace {

using K = ExprNode::Kind;

ExprPtr leaf(K k) {
    auto n = std::make_shared<ExprNode>();
    n->kind = k;
    return n;
}

ExprPtr node(K k, ExprPtr a, ExprPtr b = nullptr) {
    auto n = std::make_shared<ExprNode>();
    n->kind = k;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    ExprPtr parse() {
        auto e = expr();
        skip();
        if (i_ != s_.size()) throw SyntaxError(i_, "unexpected '" + std::string(1, s_[i_]) + "'");
        return e;
    }

private:
    const std::string& s_;
    std::size_t i_ = 0;

    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool eat(char c) {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }

    ExprPtr expr() {
        auto e = term();
        while (true) {
            if (eat('+')) e = node(K::Add, e, term());
            else if (eat('-')) e = node(K::Sub, e, term());
            else return e;
        }
    }

    ExprPtr term() {
        auto e = unary();
        while (true) {
            if (eat('*')) e = node(K::Mul, e, unary());
            else if (eat('/')) e = node(K::Div, e, unary());
            else return e;
        }
    }

    ExprPtr unary() {
        if (eat('-')) return node(K::Neg, unary());
        return power();
    }

    ExprPtr power() {
        auto base = primary();
        if (eat('^')) return node(K::Pow, base, unary());
        return base;
    }

    ExprPtr primary() {
        skip();
        if (i_ >= s_.size()) throw SyntaxError(i_, "expected an operand, found end of input");
        const char c = s_[i_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        if (c == '(') {
            ++i_;
            auto e = expr();
            if (!eat(')')) throw SyntaxError(i_, "expected ')'");
            return e;
        }
        throw SyntaxError(i_, "expected an operand, found '" + std::string(1, c) + "'");
    }

    ExprPtr number() {
        const std::size_t start = i_;
        while (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '.')) ++i_;
        if (i_ < s_.size() && (s_[i_] == 'e' || s_[i_] == 'E')) {
            std::size_t j = i_ + 1;
            if (j < s_.size() && (s_[j] == '+' || s_[j] == '-')) ++j;
            if (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) {
                i_ = j;
                while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            }
        }
        double v = 0.0;
        auto res = std::from_chars(s_.data() + start, s_.data() + i_, v);
        if (res.ec != std::errc() || res.ptr != s_.data() + i_) throw SyntaxError(start, "malformed number");
        auto n = std::make_shared<ExprNode>();
        n->kind = K::Number;
        n->value = v;
        return n;
    }

    ExprPtr identifier() {
        const std::size_t start = i_;
        while (i_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[i_]))) ++i_;
        const std::string id = s_.substr(start, i_ - start);
        if (id == "x" || id == "y" || id == "z" || id == "r") {
            auto n = std::make_shared<ExprNode>();
            n->kind = K::Var;
            n->var = id[0];
            return n;
        }
        if (id == "pi") return leaf(K::Pi);
        if (id == "sin" || id == "cos" || id == "exp" || id == "sqrt" || id == "abs") {
            if (!eat('(')) throw SyntaxError(i_, "expected '(' after " + id);
            auto arg = expr();
            if (!eat(')')) throw SyntaxError(i_, "expected ')'");
            auto n = std::make_shared<ExprNode>();
            n->kind = K::Call;
            n->fn = id;
            n->a = arg;
            return n;
        }
        throw Error(ErrorCode::UnknownIdentifier, "'" + id + "' at offset " + std::to_string(start));
    }
};

double domain(double v, const char* what) {
    if (!std::isfinite(v)) throw Error(ErrorCode::EvalDomainError, what);
    return v;
}

double eval_node(const ExprNode& n, const ExprVars& v) {
    switch (n.kind) {
    case K::Number: return n.value;
    case K::Pi: return std::numbers::pi;
    case K::Var:
        switch (n.var) {
        case 'x': return v.x;
        case 'y': return v.y;
        case 'z': return v.z;
        default: return v.r;
        }
    case K::Neg: return -eval_node(*n.a, v);
    case K::Add: return eval_node(*n.a, v) + eval_node(*n.b, v);
    case K::Sub: return eval_node(*n.a, v) - eval_node(*n.b, v);
    case K::Mul: return eval_node(*n.a, v) * eval_node(*n.b, v);
    case K::Div: {
        const double d = eval_node(*n.b, v);
        if (d == 0.0) throw Error(ErrorCode::EvalDomainError, "division by zero");
        return eval_node(*n.a, v) / d;
    }
    case K::Pow: return domain(std::pow(eval_node(*n.a, v), eval_node(*n.b, v)), "power outside its domain");
    case K::Call: {
        const double x = eval_node(*n.a, v);
        if (n.fn == "sin") return std::sin(x);
        if (n.fn == "cos") return std::cos(x);
        if (n.fn == "exp") return domain(std::exp(x), "exp overflow");
        if (n.fn == "abs") return std::abs(x);
        if (x < 0) throw Error(ErrorCode::EvalDomainError, "sqrt of a negative number");
        return std::sqrt(x);
    }
    }
    return 0.0;
}

int prec(const ExprNode& n) {
    switch (n.kind) {
    case K::Add:
    case K::Sub: return 1;
    case K::Mul:
    case K::Div: return 2;
    case K::Neg: return 3;
    case K::Pow: return 4;
    default: return 5;
    }
}

std::string fmt(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string render(const ExprNode& n) {
    auto wrap = [](const ExprNode& c, bool paren) { return paren ? "(" + render(c) + ")" : render(c); };
    switch (n.kind) {
    case K::Number: return fmt(n.value);
    case K::Pi: return "pi";
    case K::Var: return std::string(1, n.var);
    case K::Call: return n.fn + "(" + render(*n.a) + ")";
    case K::Neg: return "-" + wrap(*n.a, prec(*n.a) < 3);
    case K::Pow: return wrap(*n.a, prec(*n.a) <= 4) + "^" + wrap(*n.b, prec(*n.b) < 3);
    default: {
        const int p = prec(n);
        const char* op = n.kind == K::Add ? " + " : n.kind == K::Sub ? " - " : n.kind == K::Mul ? "*" : "/";
        return wrap(*n.a, prec(*n.a) < p) + op + wrap(*n.b, prec(*n.b) <= p);
    }
    }
}

bool only_r(const ExprNode& n) {
    if (n.kind == K::Var && n.var != 'r') return false;
    if (n.a && !only_r(*n.a)) return false;
    if (n.b && !only_r(*n.b)) return false;
    return true;
}

} // namespace

bool ast_equal(const ExprNode& a, const ExprNode& b) {
    if (a.kind != b.kind || a.value != b.value || a.var != b.var || a.fn != b.fn) return false;
    if (static_cast<bool>(a.a) != static_cast<bool>(b.a) || static_cast<bool>(a.b) != static_cast<bool>(b.b))
        return false;
    if (a.a && !ast_equal(*a.a, *b.a)) return false;
    if (a.b && !ast_equal(*a.b, *b.b)) return false;
    return true;
}

FunctionExpr FunctionExpr::parse(const std::string& src) {
    FunctionExpr f;
    f.src_ = src;
    f.root_ = Parser(f.src_).parse();
    return f;
}

double FunctionExpr::eval(const ExprVars& v) const { return eval_node(*root_, v); }

std::string FunctionExpr::print() const { return render(*root_); }

bool FunctionExpr::radial_only() const { return only_r(*root_); }

} // namespace ncf
