#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "perioscope/errors.hpp"
#include "perioscope/expr.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

using perioscope::EvalError;
using perioscope::ParseError;
using perioscope::expr::Expression;

namespace {

double eval(const char* s, double t = 0.0) { return Expression::parse(s).eval(t); }

std::size_t error_offset(const char* s)
{
    try {
        (void)Expression::parse(s);
    } catch (const ParseError& e) {
        return e.offset();
    }
    FAIL("expected a parse error for ", s);
    return 0;
}

} // namespace

TEST_CASE("evaluation examples")
{
    CHECK(std::abs(eval("8*cos(2*pi*t)", 0.25)) <= 1e-12);
    CHECK(eval("t^2", 3.0) == 9.0);
    CHECK_THROWS_AS(eval("1/t", 0.0), EvalError);
    CHECK_THROWS_AS(eval("0^(-1)"), EvalError);
    CHECK(eval("exp(0)") == 1.0);
    CHECK(eval("pi") == std::numbers::pi);
}

TEST_CASE("precedence and associativity")
{
    CHECK(eval("2+3*4") == 14.0);
    CHECK(eval("(2+3)*4") == 20.0);
    CHECK(eval("2^3^2") == 512.0);
    CHECK(eval("-2^2") == -4.0);
    CHECK(eval("2^-1") == 0.5);
    CHECK(eval("8/4/2") == 1.0);
    CHECK(eval("10-4-3") == 3.0);
    CHECK(eval("--3") == 3.0);
    CHECK(eval("1.5e2") == 150.0);
}

TEST_CASE("parse errors carry byte offsets")
{
    CHECK(error_offset("sin(") == 4);
    CHECK(error_offset("2 + x") == 4);
    CHECK(error_offset("(1+2") == 4);
    CHECK(error_offset("1 +* 2") == 3);
    CHECK(error_offset("") == 0);
    CHECK(error_offset("3 4") == 2);
    CHECK(error_offset("tan(t)") == 0);
}

TEST_CASE("printing round-trips over the corpus")
{
    const std::vector<std::string> corpus = {
        "8*cos(2*pi*t)",
        "6*sin(2*pi*t/1.2)",
        "5*sin(2*pi*t/0.8)",
        "2+cos(2*pi*t/0.8)^3",
        "-2^2 + t^3^0.5",
        "exp(-t)*sin(3*t) - 0.1/(1+t^2)",
        "((t))*-(1.25e-3)+pi^-t",
        "1/3 + t/7 - cos(t)^2*sin(t/3)",
    };
    std::mt19937_64 rng(20261015);
    std::uniform_real_distribution<double> time(0.0, 2.0);
    for (const auto& s : corpus) {
        CAPTURE(s);
        const Expression a = Expression::parse(s);
        const Expression b = Expression::parse(a.to_string());
        CHECK(b.to_string() == a.to_string());
        for (int i = 0; i < 100; ++i) {
            const double t = time(rng);
            CHECK(std::abs(a.eval(t) - b.eval(t)) <= 1e-12);
        }
    }
}

TEST_CASE("expressions are values")
{
    const Expression e = Expression::parse("t*t");
    const Expression copy = e;
    CHECK(copy(4.0) == 16.0);
    CHECK(e.source() == "t*t");
}
