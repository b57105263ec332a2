#pragma once

// Scalar expressions in the time variable `t`.
//
// Grammar (lowest to highest precedence):
//   sum     := product (('+' | '-') product)*
//   product := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' unary)?            right-associative
//   primary := number | 'pi' | 't' | func '(' sum ')' | '(' sum ')'
//   func    := 'sin' | 'cos' | 'exp'
//
// So `-2^2` is `-(2^2)` and `2^3^2` is `2^(3^2)`.

#include <memory>
#include <string>
#include <string_view>

namespace perioscope::expr {

class Expression {
public:
    struct Node;

    /// Throws ParseError (with byte offset) on malformed text or unknown identifiers.
    static Expression parse(std::string_view source);

    /// Throws EvalError on division by zero, 0^negative, or a non-finite result.
    [[nodiscard]] double eval(double t) const;
    double operator()(double t) const { return eval(t); }

    /// Fully parenthesized text that re-parses to an equivalent expression.
    [[nodiscard]] std::string to_string() const;

    [[nodiscard]] const std::string& source() const noexcept { return source_; }

private:
    Expression(std::shared_ptr<const Node> root, std::string source)
        : root_(std::move(root)), source_(std::move(source)) {}

    std::shared_ptr<const Node> root_;
    std::string source_;
};

} // namespace perioscope::expr
