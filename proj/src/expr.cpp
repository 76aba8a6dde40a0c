#include "morselat/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

#include "morselat/error.hpp"

namespace morselat {
namespace {

struct Num : Expr {
    double v;
    explicit Num(double v) : v(v) {}
    double eval(double) const override { return v; }
};
struct Var : Expr {
    double eval(double x) const override { return x; }
};
struct Neg : Expr {
    ExprPtr a;
    explicit Neg(ExprPtr a) : a(std::move(a)) {}
    double eval(double x) const override { return -a->eval(x); }
};
struct Bin : Expr {
    char op;
    ExprPtr a, b;
    Bin(char op, ExprPtr a, ExprPtr b) : op(op), a(std::move(a)), b(std::move(b)) {}
    double eval(double x) const override {
        double u = a->eval(x), v = b->eval(x);
        switch (op) {
            case '+': return u + v;
            case '-': return u - v;
            case '*': return u * v;
            case '/': return u / v;
            default: return std::pow(u, v);
        }
    }
};
struct Piecewise : Expr {
    bool strict;
    double c;
    ExprPtr then, other;
    Piecewise(bool strict, double c, ExprPtr t, ExprPtr o)
        : strict(strict), c(c), then(std::move(t)), other(std::move(o)) {}
    double eval(double x) const override {
        bool in = strict ? x < c : x <= c;
        return in ? then->eval(x) : other->eval(x);
    }
};

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    ExprPtr parse() {
        ExprPtr e = expr();
        skip();
        if (i_ != s_.size()) fail("end of input");
        return e;
    }

private:
    const std::string& s_;
    size_t i_ = 0;

    [[noreturn]] void fail(const std::string& expected) {
        throw Error(ErrorKind::ParseError,
                    "position " + std::to_string(i_) + ": expected " + expected);
    }
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool eat(const std::string& tok) {
        skip();
        if (s_.compare(i_, tok.size(), tok) == 0) {
            i_ += tok.size();
            return true;
        }
        return false;
    }
    void need(const std::string& tok) {
        if (!eat(tok)) fail("'" + tok + "'");
    }

    ExprPtr expr() {
        ExprPtr e = term();
        for (;;) {
            if (eat("+"))
                e = std::make_shared<Bin>('+', e, term());
            else if (eat("-"))
                e = std::make_shared<Bin>('-', e, term());
            else
                return e;
        }
    }
    ExprPtr term() {
        ExprPtr e = unary();
        for (;;) {
            if (eat("*"))
                e = std::make_shared<Bin>('*', e, unary());
            else if (eat("/"))
                e = std::make_shared<Bin>('/', e, unary());
            else
                return e;
        }
    }
    ExprPtr unary() {
        if (eat("-")) return std::make_shared<Neg>(unary());
        return power();
    }
    ExprPtr power() {
        ExprPtr base = primary();
        if (eat("^")) return std::make_shared<Bin>('^', base, unary());
        return base;
    }
    double number() {
        skip();
        const char* start = s_.c_str() + i_;
        char* end = nullptr;
        if (i_ >= s_.size() || !(std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '.'))
            fail("number");
        double v = std::strtod(start, &end);
        if (end == start) fail("number");
        i_ += static_cast<size_t>(end - start);
        return v;
    }
    ExprPtr primary() {
        skip();
        if (i_ >= s_.size()) fail("number, 'x', '(' or 'piecewise'");
        if (eat("piecewise")) {
            need("(");
            need("x");
            bool strict;
            if (eat("<="))
                strict = false;
            else if (eat("<"))
                strict = true;
            else
                fail("'<=' or '<'");
            double sign = eat("-") ? -1.0 : 1.0;
            double c = sign * number();
            need(":");
            ExprPtr t = expr();
            need(",");
            ExprPtr o = expr();
            need(")");
            return std::make_shared<Piecewise>(strict, c, t, o);
        }
        if (eat("(")) {
            ExprPtr e = expr();
            need(")");
            return e;
        }
        if (eat("x")) return std::make_shared<Var>();
        char ch = s_[i_];
        if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.')
            return std::make_shared<Num>(number());
        fail("number, 'x', '(' or 'piecewise'");
    }
};

}  // namespace

ExprPtr parse_expr(const std::string& text) { return Parser(text).parse(); }

}  // namespace morselat
