#pragma once
#include <memory>
#include <string>

namespace morselat {

// number | x | -e | e+e | e-e | e*e | e/e | e^e | (e)
// | piecewise(x<=c: e, e) | piecewise(x<c: e, e)
class Expr {
public:
    virtual ~Expr() = default;
    virtual double eval(double x) const = 0;
};

using ExprPtr = std::shared_ptr<const Expr>;

// throws ParseError with "position N: expected ..."
ExprPtr parse_expr(const std::string& text);

}  // namespace morselat
