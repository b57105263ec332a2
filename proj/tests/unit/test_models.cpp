#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support.hpp"

#include "perioscope/errors.hpp"
#include "perioscope/models.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace perioscope;
using namespace perioscope::models;

namespace {

constexpr double kPi = std::numbers::pi;

PeriodicSignal sine(double amp, double period)
{
    return PeriodicSignal::fourier({{1, 0.0, amp}}, period);
}

ProblemDef ls(double p) { return ProblemDef::create(LazerSolimini{p}, 0.5, 1.0, sine(1.0, 1.0)); }

ProblemDef mems_const_a(double b, double p, double a)
{
    return ProblemDef::create(Mems{b, p, PeriodicSignal::constant(a)}, 0.5, 1.0, sine(1.0, 1.0));
}

ProblemDef cm(double a) { return ProblemDef::create(CondensedMatter{a}, 0.3, 1.0, sine(1.0, 1.0)); }

} // namespace

TEST_CASE("nonlinearity values")
{
    SUBCASE("Lazer-Solimini")
    {
        const auto f = nonlinearity(ls(0.5), 0.3, 4.0);
        CHECK(f.value == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(f.du == doctest::Approx(-1.0 / 16.0).epsilon(1e-15));
    }
    SUBCASE("MEMS")
    {
        const auto f = nonlinearity(mems_const_a(2.0, 3.0, 2.0), 0.1, 1.0);
        CHECK(f.value == 4.0);
        CHECK(f.du == -4.0);
    }
    SUBCASE("condensed matter")
    {
        const auto prob = cm(3.0);
        CHECK(nonlinearity(prob, 0.0, 1.0).value == 0.0);
        CHECK(nonlinearity(prob, 0.0, 2.0).value == doctest::Approx(-3.0 / 16.0).epsilon(1e-15));
        CHECK(std::abs(nonlinearity(prob, 0.0, 4.0 / 3.0).du) <= 1e-14);
        CHECK(nonlinearity(prob, 0.0, 1.3).du < 0.0);
        CHECK(nonlinearity(prob, 0.0, 1.4).du > 0.0);
    }
    SUBCASE("domain")
    {
        CHECK_THROWS_AS((void)nonlinearity(ls(0.5), 0.0, 0.0), DomainError);
        CHECK_THROWS_AS((void)nonlinearity(cm(1.0), 0.0, -1.0), DomainError);
    }
}

TEST_CASE("homotopy scaling")
{
    const auto prob = ls(1.0);
    CHECK(homotopy_nonlinearity(prob, 0.0, 0.2, 3.0).value == 0.0);
    CHECK(homotopy_nonlinearity(prob, 0.5, 0.2, 2.0).value == 0.25);
    for (const char* fig : {"fig1", "fig2", "fig3"}) {
        const auto p = testing::example_problem(fig);
        for (double u : {0.3, 1.0, 2.7}) {
            const auto g = nonlinearity(p, 0.17, u);
            const auto k1 = homotopy_nonlinearity(p, 1.0, 0.17, u);
            CHECK(k1.value == g.value);
            CHECK(k1.du == g.du);
        }
    }
}

TEST_CASE("derivative matches central differences")
{
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> ut(0.0, 1.0), uu(0.2, 5.0);
    for (const char* fig : {"fig1", "fig2", "fig3"}) {
        const auto p = testing::example_problem(fig);
        CAPTURE(fig);
        int bad = 0;
        for (int i = 0; i < 1000; ++i) {
            const double t = ut(rng) * p.period();
            const double u = uu(rng);
            const double h = 1e-5 * u;
            const double fd = (nonlinearity(p, t, u + h).value - nonlinearity(p, t, u - h).value) / (2.0 * h);
            const double du = nonlinearity(p, t, u).du;
            if (std::abs(fd - du) > 1e-6 * std::max(1.0, std::abs(du))) {
                ++bad;
            }
        }
        CHECK(bad == 0);
    }
}

TEST_CASE("hypothesis checks on the worked examples")
{
    SUBCASE("MEMS example")
    {
        const auto r = validate(testing::example_problem("fig2"));
        CHECK(r.omega_sq == doctest::Approx(std::pow(2.0 * kPi / 0.8, 2)).epsilon(1e-12));
        CHECK(r.omega_sq == doctest::Approx(61.685).epsilon(1e-4));
        REQUIRE(r.find("spring_window") != nullptr);
        CHECK(r.find("spring_window")->passed);
        CHECK(r.find("zero_average_forcing")->passed);
        CHECK(r.slope_sup == 2.0);
    }
    SUBCASE("condensed-matter example")
    {
        const auto r = validate(testing::example_problem("fig3"));
        CHECK(r.slope_sup == doctest::Approx(3.0 * 243.0 / 3125.0).epsilon(1e-14));
        REQUIRE(r.find("slope_bound") != nullptr);
        CHECK(r.find("slope_bound")->passed);
        const auto* ratio = r.find("forcing_damping_ratio");
        REQUIRE(ratio != nullptr);
        CHECK_FALSE(ratio->passed);
        // int_0^1 64 cos^2(2 pi t) dt = 32
        CHECK(r.forcing_l2 == doctest::Approx(std::sqrt(32.0)).epsilon(1e-12));
        CHECK(ratio->quantity == doctest::Approx(std::sqrt(3.0) * std::sqrt(32.0) / 0.3).epsilon(1e-10));
        CHECK_FALSE(r.all_passed());
    }
    SUBCASE("Lazer-Solimini example")
    {
        const auto r = validate(testing::example_problem("fig1"));
        CHECK(r.slope_sup == 0.0);
        CHECK(r.all_passed());
    }
    SUBCASE("deterministic")
    {
        const auto p = testing::example_problem("fig3");
        const auto a = validate(p);
        const auto b = validate(p);
        REQUIRE(a.checks.size() == b.checks.size());
        for (std::size_t i = 0; i < a.checks.size(); ++i) {
            CHECK(a.checks[i].quantity == b.checks[i].quantity);
            CHECK(a.checks[i].passed == b.checks[i].passed);
        }
    }
    SUBCASE("spring outside the window is reported, not fatal")
    {
        const auto r = validate(mems_const_a(100.0, 1.0, 1.0));
        CHECK_FALSE(r.find("spring_window")->passed);
    }
}

TEST_CASE("problem data is validated")
{
    CHECK_THROWS_AS((void)ProblemDef::create(LazerSolimini{0.5}, 0.5, 1.0, PeriodicSignal::constant(0.1)),
                    ConfigError);
    CHECK_THROWS_AS((void)ProblemDef::create(LazerSolimini{-1.0}, 0.5, 1.0, sine(1.0, 1.0)), ConfigError);
    CHECK_THROWS_AS((void)ProblemDef::create(LazerSolimini{1.0}, 0.5, 0.0, sine(1.0, 1.0)), ConfigError);
    const auto negative_a = PeriodicSignal::expression(expr::Expression::parse("cos(2*pi*t)"));
    CHECK_THROWS_AS((void)ProblemDef::create(Mems{1.0, 1.0, negative_a}, 0.5, 1.0, sine(1.0, 1.0)),
                    ConfigError);
    CHECK(ls(1.0).omega() == doctest::Approx(2.0 * kPi));
}

TEST_CASE("lower bound")
{
    CHECK(*lazer_solimini_lower_bound(0.5, 3.0, 6.0) == doctest::Approx(1.0 / 81.0).epsilon(1e-14));
    CHECK_FALSE(lazer_solimini_lower_bound(1.0, 0.0, 0.0).has_value());
    CHECK(*lazer_solimini_lower_bound(2.0, 2.0, 2.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(forcing_max(testing::example_problem("fig1")) == doctest::Approx(6.0).epsilon(1e-6));
    CHECK(lower_bound_guard(testing::example_problem("fig1"), 3.0).has_value());
    CHECK_FALSE(lower_bound_guard(testing::example_problem("fig3"), 3.0).has_value());
}

TEST_CASE("signals")
{
    const auto f = PeriodicSignal::fourier({{1, 2.0, 0.0}, {3, 0.0, -1.0}}, 2.0);
    CHECK(f(0.0) == doctest::Approx(2.0));
    CHECK(f(0.5) == doctest::Approx(2.0 * std::cos(kPi / 2.0) - std::sin(3.0 * kPi / 2.0)));
    CHECK(PeriodicSignal::constant(4.5)(123.0) == 4.5);
    const auto e = PeriodicSignal::expression(expr::Expression::parse("2+cos(2*pi*t/0.8)^3"));
    CHECK(e(0.0) == doctest::Approx(3.0));
    CHECK_FALSE(e.describe().empty());
}
