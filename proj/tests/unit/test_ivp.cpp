#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "smooth_corpus.hpp"

#include "perioscope/errors.hpp"
#include "perioscope/ivp.hpp"

#include <cmath>
#include <numbers>
#include <vector>

using namespace perioscope;
using ivp::DenseTrajectory;
using testing::endpoint_error;
using testing::smooth_corpus;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

DenseTrajectory sampled(double period, std::size_t n, double (*f)(double, double))
{
    return DenseTrajectory::tabulate(period, n, 1, [&](double t, std::span<double> s,
                                                       std::span<double> d) {
        s[0] = f(t, period);
        d[0] = 0.0;
    });
}

} // namespace

TEST_CASE("step counts are normalized to even")
{
    CHECK(ivp::normalize_steps(0) == 4);
    CHECK(ivp::normalize_steps(7) == 8);
    CHECK(ivp::normalize_steps(2048) == 2048);
    const auto traj = ivp::integrate(smooth_corpus()[0].rhs, std::vector<double>{1.0}, 1.0, 9);
    CHECK(traj.steps() == 10);
}

TEST_CASE("endpoint accuracy on exact solutions")
{
    for (const auto& c : smooth_corpus()) {
        CAPTURE(c.name);
        CHECK(endpoint_error(c, 2048) <= 1e-11);
    }
}

TEST_CASE("fourth-order convergence")
{
    for (const auto& c : smooth_corpus()) {
        CAPTURE(c.name);
        const double ratio = endpoint_error(c, 32) / endpoint_error(c, 64);
        CAPTURE(ratio);
        CHECK(ratio >= 12.0);
        CHECK(ratio <= 20.0);
    }
}

TEST_CASE("blow-up is reported with its time")
{
    const auto rhs = [](double, std::span<const double> y, std::span<double> d) { d[0] = y[0] * y[0]; };
    try {
        (void)ivp::integrate(rhs, std::vector<double>{1.0}, 2.0, 4096);
        FAIL("expected blow-up");
    } catch (const BlowupError& e) {
        CHECK(e.time() > 0.99);
        CHECK(e.time() < 1.01);
    }
}

TEST_CASE("dense output")
{
    const auto osc = smooth_corpus()[1];
    const auto traj = ivp::integrate(osc.rhs, osc.y0, 3.0, 256);
    SUBCASE("exact at grid points")
    {
        for (std::size_t i : {0u, 17u, 128u, 256u}) {
            CHECK(traj.sample(traj.time(i), 0) == traj.value(i, 0));
            CHECK(traj.sample(traj.time(i))[1] == traj.value(i, 1));
        }
        CHECK(traj.sample(3.0, 0) == traj.value(256, 0));
    }
    SUBCASE("interpolation between grid points")
    {
        for (double t = 0.005; t < 3.0; t += 0.0731) {
            CHECK(std::abs(traj.sample(t, 0) - std::cos(t)) <= 1e-8);
            CHECK(std::abs(traj.sample(t, 1) + std::sin(t)) <= 1e-8);
        }
    }
    SUBCASE("outside the period")
    {
        CHECK_THROWS_AS((void)traj.sample(-1e-3, 0), std::out_of_range);
        CHECK_THROWS_AS((void)traj.sample(3.01, 0), std::out_of_range);
    }
}

TEST_CASE("period means")
{
    const auto constant = sampled(1.3, 64, [](double, double) { return 5.0; });
    CHECK(constant.mean(0) == 5.0);

    const auto sine = sampled(1.3, 2048, [](double t, double T) { return std::sin(kTwoPi * t / T); });
    CHECK(std::abs(sine.mean(0)) <= 1e-12);

    const auto sine_sq = sampled(1.3, 2048, [](double t, double T) {
        const double s = std::sin(kTwoPi * t / T);
        return s * s;
    });
    CHECK(std::abs(sine_sq.mean(0) - 0.5) <= 1e-10);

    // trigonometric polynomial of degree N/4
    const std::size_t n = 64;
    const auto trig = sampled(2.0, n, [](double t, double T) {
        return 0.75 + std::cos(16.0 * kTwoPi * t / T) - 0.3 * std::sin(7.0 * kTwoPi * t / T);
    });
    CHECK(std::abs(trig.mean(0) - 0.75) <= 1e-13);
}

TEST_CASE("invalid trajectories are rejected")
{
    CHECK_THROWS_AS(DenseTrajectory(1.0, 3, 1, std::vector<double>(4), std::vector<double>(4)),
                    std::invalid_argument);
    CHECK_THROWS_AS(DenseTrajectory(0.0, 4, 1, std::vector<double>(5), std::vector<double>(5)),
                    std::invalid_argument);
    CHECK_THROWS_AS(DenseTrajectory(1.0, 4, 1, std::vector<double>(4), std::vector<double>(5)),
                    std::invalid_argument);
}
