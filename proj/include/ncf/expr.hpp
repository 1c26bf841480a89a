#pragma once

#include <memory>
#include <string>

namespace ncf {

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    enum class Kind { Number, Var, Pi, Neg, Add, Sub, Mul, Div, Pow, Call };
    Kind kind;
    double value = 0.0;  // Number
    char var = 0;        // Var: one of x y z r
    std::string fn;      // Call: sin cos exp sqrt abs
    ExprPtr a, b;
};

bool ast_equal(const ExprNode& a, const ExprNode& b);

struct ExprVars {
    double x = 0, y = 0, z = 0, r = 0;
};

class FunctionExpr {
public:
    // Recursive descent. Precedence: ^ > unary - > * / > + -; ^ is right
    // associative. Throws SyntaxError (with byte offset) or UnknownIdentifier.
    static FunctionExpr parse(const std::string& src);

    const std::string& source() const { return src_; }
    const ExprNode& root() const { return *root_; }
    // Throws EvalDomainError on division by zero or a non-finite result.
    double eval(const ExprVars& v) const;
    // Minimal-parenthesis rendering that parses back to the same tree.
    std::string print() const;
    // True when the only variable referenced is r.
    bool radial_only() const;

private:
    std::string src_;
    ExprPtr root_;
};

inline FunctionExpr parse_function(const std::string& src) { return FunctionExpr::parse(src); }

} // namespace ncf
