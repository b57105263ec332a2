#include "perioscope/expr.hpp"

#include "perioscope/errors.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace perioscope::expr {

enum class Kind { constant, time, negate, add, sub, mul, div, pow, sin, cos, exp };

struct Expression::Node {
    Kind kind = Kind::constant;
    double value = 0.0;
    bool named_pi = false;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

NodePtr make_leaf(Kind kind, double value = 0.0, bool named_pi = false)
{
    auto n = std::make_shared<Expression::Node>();
    n->kind = kind;
    n->value = value;
    n->named_pi = named_pi;
    return n;
}

NodePtr make_node(Kind kind, NodePtr lhs, NodePtr rhs = nullptr)
{
    auto n = std::make_shared<Expression::Node>();
    n->kind = kind;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    NodePtr parse_all()
    {
        skip_space();
        if (pos_ == src_.size()) {
            throw ParseError(pos_, "expected expression, found end of input");
        }
        auto root = parse_sum();
        skip_space();
        if (pos_ != src_.size()) {
            throw ParseError(pos_, std::string("expected operator or end of input, found '") +
                                       src_[pos_] + "'");
        }
        return root;
    }

private:
    void skip_space()
    {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c)
    {
        skip_space();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr parse_sum()
    {
        auto lhs = parse_product();
        for (;;) {
            if (accept('+')) {
                lhs = make_node(Kind::add, lhs, parse_product());
            } else if (accept('-')) {
                lhs = make_node(Kind::sub, lhs, parse_product());
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_product()
    {
        auto lhs = parse_unary();
        for (;;) {
            if (accept('*')) {
                lhs = make_node(Kind::mul, lhs, parse_unary());
            } else if (accept('/')) {
                lhs = make_node(Kind::div, lhs, parse_unary());
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_unary()
    {
        if (accept('-')) {
            return make_node(Kind::negate, parse_unary());
        }
        if (accept('+')) {
            return parse_unary();
        }
        return parse_power();
    }

    NodePtr parse_power()
    {
        auto base = parse_primary();
        if (accept('^')) {
            return make_node(Kind::pow, base, parse_unary());
        }
        return base;
    }

    NodePtr parse_primary()
    {
        skip_space();
        if (pos_ == src_.size()) {
            throw ParseError(pos_, "expected expression, found end of input");
        }
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return parse_number();
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            return parse_identifier();
        }
        if (c == '(') {
            ++pos_;
            auto inner = parse_sum();
            if (!accept(')')) {
                throw ParseError(pos_, "expected ')'");
            }
            return inner;
        }
        throw ParseError(pos_, std::string("expected expression, found '") + c + "'");
    }

    NodePtr parse_number()
    {
        const std::size_t start = pos_;
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(src_.data() + pos_, src_.data() + src_.size(), value);
        if (ec != std::errc{}) {
            throw ParseError(start, "malformed number");
        }
        pos_ = static_cast<std::size_t>(ptr - src_.data());
        return make_leaf(Kind::constant, value);
    }

    NodePtr parse_identifier()
    {
        const std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
            ++pos_;
        }
        const std::string_view name = src_.substr(start, pos_ - start);
        if (name == "t") {
            return make_leaf(Kind::time);
        }
        if (name == "pi") {
            return make_leaf(Kind::constant, std::numbers::pi, true);
        }
        Kind fn;
        if (name == "sin") {
            fn = Kind::sin;
        } else if (name == "cos") {
            fn = Kind::cos;
        } else if (name == "exp") {
            fn = Kind::exp;
        } else {
            throw ParseError(start, "unknown identifier '" + std::string(name) + "'");
        }
        if (!accept('(')) {
            throw ParseError(pos_, "expected '(' after function name");
        }
        auto arg = parse_sum();
        if (!accept(')')) {
            throw ParseError(pos_, "expected ')'");
        }
        return make_node(fn, arg);
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

double eval_node(const Expression::Node& n, double t)
{
    switch (n.kind) {
    case Kind::constant:
        return n.value;
    case Kind::time:
        return t;
    case Kind::negate:
        return -eval_node(*n.lhs, t);
    case Kind::add:
        return eval_node(*n.lhs, t) + eval_node(*n.rhs, t);
    case Kind::sub:
        return eval_node(*n.lhs, t) - eval_node(*n.rhs, t);
    case Kind::mul:
        return eval_node(*n.lhs, t) * eval_node(*n.rhs, t);
    case Kind::div: {
        const double num = eval_node(*n.lhs, t);
        const double den = eval_node(*n.rhs, t);
        if (den == 0.0) {
            throw EvalError("division by zero at t = " + std::to_string(t));
        }
        return num / den;
    }
    case Kind::pow: {
        const double base = eval_node(*n.lhs, t);
        const double exponent = eval_node(*n.rhs, t);
        if (base == 0.0 && exponent < 0.0) {
            throw EvalError("zero raised to a negative power at t = " + std::to_string(t));
        }
        return std::pow(base, exponent);
    }
    case Kind::sin:
        return std::sin(eval_node(*n.lhs, t));
    case Kind::cos:
        return std::cos(eval_node(*n.lhs, t));
    case Kind::exp:
        return std::exp(eval_node(*n.lhs, t));
    }
    return 0.0;
}

void print_node(const Expression::Node& n, std::string& out)
{
    auto binary = [&](const char* op) {
        out += '(';
        print_node(*n.lhs, out);
        out += op;
        print_node(*n.rhs, out);
        out += ')';
    };
    auto call = [&](const char* name) {
        out += name;
        out += '(';
        print_node(*n.lhs, out);
        out += ')';
    };
    switch (n.kind) {
    case Kind::constant: {
        if (n.named_pi) {
            out += "pi";
            break;
        }
        std::array<char, 32> buf{};
        std::snprintf(buf.data(), buf.size(), "%.17g", n.value);
        if (n.value < 0.0) {
            out += '(';
            out += buf.data();
            out += ')';
        } else {
            out += buf.data();
        }
        break;
    }
    case Kind::time:
        out += 't';
        break;
    case Kind::negate:
        out += "(-";
        print_node(*n.lhs, out);
        out += ')';
        break;
    case Kind::add:
        binary(" + ");
        break;
    case Kind::sub:
        binary(" - ");
        break;
    case Kind::mul:
        binary(" * ");
        break;
    case Kind::div:
        binary(" / ");
        break;
    case Kind::pow:
        binary("^");
        break;
    case Kind::sin:
        call("sin");
        break;
    case Kind::cos:
        call("cos");
        break;
    case Kind::exp:
        call("exp");
        break;
    }
}

} // namespace

Expression Expression::parse(std::string_view source)
{
    Parser parser(source);
    return Expression(parser.parse_all(), std::string(source));
}

double Expression::eval(double t) const
{
    const double v = eval_node(*root_, t);
    if (!std::isfinite(v)) {
        throw EvalError("non-finite value in '" + source_ + "' at t = " + std::to_string(t));
    }
    return v;
}

std::string Expression::to_string() const
{
    std::string out;
    print_node(*root_, out);
    return out;
}

} // namespace perioscope::expr
