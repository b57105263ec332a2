#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "perioscope/errors.hpp"
#include "perioscope/linper.hpp"

#include <cmath>
#include <cstring>
#include <numbers>
#include <random>

using namespace perioscope;
using linper::LinearPeriodicProblem;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double sup_error(const ivp::DenseTrajectory& y, double (*exact)(double))
{
    double worst = 0.0;
    for (std::size_t i = 0; i <= y.steps(); ++i) {
        worst = std::max(worst, std::abs(y.value(i, 0) - exact(y.time(i))));
    }
    return worst;
}

// max |y'' + c y' + b y - mu - f| with y'' from a fourth-order central difference of the
// stored y' values (periodic wrap), independent of the solver's own acceleration.
double ode_residual(const LinearPeriodicProblem& p, const linper::ZeroAverageResult& r)
{
    const auto& y = r.y;
    const std::size_t n = y.steps();
    const double h = y.step();
    auto dy = [&](std::ptrdiff_t i) {
        const auto m = static_cast<std::ptrdiff_t>(n);
        return y.value(static_cast<std::size_t>(((i % m) + m) % m), 1);
    };
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto k = static_cast<std::ptrdiff_t>(i);
        const double ddy = (-dy(k + 2) + 8.0 * dy(k + 1) - 8.0 * dy(k - 1) + dy(k - 2)) / (12.0 * h);
        const double t = y.time(i);
        const double lhs = ddy + p.damping * y.value(i, 1) + p.coeff(t) * y.value(i, 0);
        worst = std::max(worst, std::abs(lhs - r.mu - p.forcing(t)));
    }
    return worst;
}

struct RandomProblems {
    std::mt19937_64 rng{42};

    // b(t) stays strictly below omega^2 pointwise
    LinearPeriodicProblem next()
    {
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        const double period = 0.8 + 1.5 * std::abs(u(rng));
        const double w = kTwoPi / period;
        const double b0 = 0.6 * w * w * u(rng);
        const double b1 = 0.3 * w * w * std::abs(u(rng));
        const double ph = 3.0 * u(rng);
        const double f0 = 2.0 * u(rng), f1 = 2.0 * u(rng), f2 = u(rng);
        LinearPeriodicProblem p;
        p.period = period;
        p.damping = u(rng);
        p.coeff = [=](double t) { return b0 + b1 * std::cos(w * t + ph); };
        p.forcing = [=](double t) { return f0 + f1 * std::sin(w * t) + f2 * std::cos(2.0 * w * t); };
        return p;
    }
};

LinearPeriodicProblem on_two_pi(double b, double c)
{
    LinearPeriodicProblem p;
    p.period = kTwoPi;
    p.damping = c;
    p.coeff = [b](double) { return b; };
    p.forcing = [](double t) { return std::sin(t); };
    return p;
}

} // namespace

TEST_CASE("harmonic-balance oracles")
{
    SUBCASE("b = 2, c = 0: y = sin t")
    {
        const auto r = linper::solve_zero_average(on_two_pi(2.0, 0.0));
        CHECK(std::abs(r.mu) <= 1e-8);
        CHECK(sup_error(r.y, [](double t) { return std::sin(t); }) <= 1e-8);
    }
    SUBCASE("b = 0, c = 1: y = -(sin t + cos t) / 2")
    {
        const auto r = linper::solve_zero_average(on_two_pi(0.0, 1.0));
        CHECK(std::abs(r.mu) <= 1e-8);
        CHECK(sup_error(r.y, [](double t) { return -(std::sin(t) + std::cos(t)) / 2.0; }) <= 1e-8);
    }
    SUBCASE("zero forcing gives zero")
    {
        auto p = on_two_pi(0.5, 0.3);
        p.forcing = [](double) { return 0.0; };
        const auto r = linper::solve_zero_average(p);
        CHECK(std::abs(r.mu) <= 1e-10);
        CHECK(sup_error(r.y, [](double) { return 0.0; }) <= 1e-10);
    }
    SUBCASE("constant forcing is absorbed by mu")
    {
        auto p = on_two_pi(0.0, 0.4);
        p.forcing = [](double) { return 3.0; };
        const auto r = linper::solve_zero_average(p);
        CHECK(r.mu == doctest::Approx(-3.0).epsilon(1e-10));
    }
}

TEST_CASE("periodic solve")
{
    const auto r = linper::solve_periodic(on_two_pi(2.0, 0.0));
    CHECK(sup_error(r.y, [](double t) { return std::sin(t); }) <= 1e-8);
    CHECK(r.periodicity_residual <= 1e-10);
}

TEST_CASE("resonance is rejected")
{
    CHECK_THROWS_AS((void)linper::solve_periodic(on_two_pi(1.0, 0.0)), ResonanceError);
    CHECK_THROWS_AS((void)linper::solve_zero_average(on_two_pi(1.0, 0.0)), SingularSystemError);
    // b = 0 is resonant for the plain periodic problem but not for the zero-average one
    CHECK_THROWS_AS((void)linper::solve_periodic(on_two_pi(0.0, 0.0)), ResonanceError);
    auto p = on_two_pi(0.0, 0.0);
    const auto r = linper::solve_zero_average(p);
    CHECK(sup_error(r.y, [](double t) { return -std::sin(t); }) <= 1e-8);
}

TEST_CASE("random problems below the first eigenvalue")
{
    RandomProblems gen;
    for (int i = 0; i < 25; ++i) {
        const auto p = gen.next();
        CAPTURE(i);
        linper::ZeroAverageResult r;
        REQUIRE_NOTHROW(r = linper::solve_zero_average(p));
        CHECK(r.scaled_determinant >= linper::kSingularThreshold);
        CHECK(ode_residual(p, r) <= 1e-6);
        CHECK(std::abs(r.y.mean(0)) <= 1e-10);
        CHECK(r.periodicity_residual <= 1e-9);

        const auto two = linper::solve_zero_average_two_stage(p);
        CHECK(std::abs(two.mu - r.mu) <= 1e-8);
        double diff = 0.0;
        for (std::size_t k = 0; k <= r.y.steps(); ++k) {
            diff = std::max(diff, std::abs(two.y.value(k, 0) - r.y.value(k, 0)));
        }
        CHECK(diff <= 1e-8);
    }
}

TEST_CASE("linearity in the forcing")
{
    RandomProblems gen;
    for (int i = 0; i < 10; ++i) {
        auto p1 = gen.next();
        auto p2 = p1;
        p2.forcing = [w = kTwoPi / p1.period](double t) { return std::cos(3.0 * w * t) - 0.7; };
        auto p12 = p1;
        p12.forcing = [f1 = p1.forcing, f2 = p2.forcing](double t) { return f1(t) + f2(t); };
        const auto r1 = linper::solve_zero_average(p1);
        const auto r2 = linper::solve_zero_average(p2);
        const auto r12 = linper::solve_zero_average(p12);
        CHECK(std::abs(r12.mu - r1.mu - r2.mu) <= 1e-9);
        double diff = 0.0;
        for (std::size_t k = 0; k <= r1.y.steps(); ++k) {
            diff = std::max(diff, std::abs(r12.y.value(k, 0) - r1.y.value(k, 0) - r2.y.value(k, 0)));
        }
        CHECK(diff <= 1e-9);
    }
}

TEST_CASE("result does not depend on the kernel variant")
{
    if (!simd::isa_available(simd::Isa::avx2)) {
        return;
    }
    RandomProblems gen;
    const auto p = gen.next();
    const auto a = linper::solve_zero_average(p, simd::Isa::scalar);
    const auto b = linper::solve_zero_average(p, simd::Isa::avx2);
    CHECK(a.mu == b.mu);
    CHECK(std::memcmp(a.y.states().data(), b.y.states().data(),
                      a.y.states().size() * sizeof(double)) == 0);
}
