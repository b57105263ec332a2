#include "perioscope/ivp.hpp"

#include "perioscope/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace perioscope::ivp {

DenseTrajectory::DenseTrajectory(double period, std::size_t steps, std::size_t dim,
                                 std::vector<double> states, std::vector<double> derivs)
    : period_(period), steps_(steps), dim_(dim), states_(std::move(states)),
      derivs_(std::move(derivs))
{
    if (!(period > 0.0) || !std::isfinite(period)) {
        throw std::invalid_argument("trajectory period must be positive");
    }
    if (steps < 2 || steps % 2 != 0) {
        throw std::invalid_argument("trajectory step count must be even");
    }
    if (dim == 0 || states_.size() != (steps + 1) * dim || derivs_.size() != states_.size()) {
        throw std::invalid_argument("trajectory storage does not match (N+1) x dim");
    }
}

DenseTrajectory DenseTrajectory::zeros(double period, std::size_t steps, std::size_t dim)
{
    const std::size_t n = (steps + 1) * dim;
    return {period, steps, dim, std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
}

DenseTrajectory DenseTrajectory::tabulate(
    double period, std::size_t steps, std::size_t dim,
    const std::function<void(double, std::span<double>, std::span<double>)>& fill)
{
    std::vector<double> states((steps + 1) * dim);
    std::vector<double> derivs((steps + 1) * dim);
    for (std::size_t i = 0; i <= steps; ++i) {
        const double t = period * static_cast<double>(i) / static_cast<double>(steps);
        fill(t, std::span<double>(states.data() + i * dim, dim),
             std::span<double>(derivs.data() + i * dim, dim));
    }
    return {period, steps, dim, std::move(states), std::move(derivs)};
}

std::vector<double> DenseTrajectory::component(std::size_t component) const
{
    if (component >= dim_) {
        throw std::out_of_range("trajectory component index");
    }
    std::vector<double> out(steps_ + 1);
    for (std::size_t i = 0; i <= steps_; ++i) {
        out[i] = states_[i * dim_ + component];
    }
    return out;
}

namespace {

struct HermiteWeights {
    std::size_t index;
    double h00, h10, h01, h11; // h10/h11 already scaled by the step
};

HermiteWeights hermite_weights(double t, double period, std::size_t steps)
{
    if (!(t >= 0.0 && t <= period)) {
        throw std::out_of_range("sample time " + std::to_string(t) + " outside [0, T]");
    }
    const double h = period / static_cast<double>(steps);
    auto grid = [&](std::size_t k) {
        return period * static_cast<double>(k) / static_cast<double>(steps);
    };
    auto i = std::min(static_cast<std::size_t>(std::floor(t / h)), steps - 1);
    while (i + 1 < steps && grid(i + 1) <= t) ++i;
    while (i > 0 && grid(i) > t) --i;
    if (t == grid(i + 1)) {
        return {i, 0.0, 0.0, 1.0, 0.0};
    }
    const double s = (t - grid(i)) / h;
    const double s2 = s * s;
    const double s3 = s2 * s;
    return {i, 2.0 * s3 - 3.0 * s2 + 1.0, (s3 - 2.0 * s2 + s) * h, -2.0 * s3 + 3.0 * s2,
            (s3 - s2) * h};
}

} // namespace

double DenseTrajectory::sample(double t, std::size_t component) const
{
    if (component >= dim_) {
        throw std::out_of_range("trajectory component index");
    }
    const auto w = hermite_weights(t, period_, steps_);
    const std::size_t a = w.index * dim_ + component;
    const std::size_t b = a + dim_;
    if (w.h01 == 0.0 && w.h11 == 0.0) {
        return states_[a];
    }
    if (w.h00 == 0.0 && w.h10 == 0.0) {
        return states_[b];
    }
    return w.h00 * states_[a] + w.h10 * derivs_[a] + w.h01 * states_[b] + w.h11 * derivs_[b];
}

std::vector<double> DenseTrajectory::sample(double t) const
{
    std::vector<double> out(dim_);
    for (std::size_t k = 0; k < dim_; ++k) {
        out[k] = sample(t, k);
    }
    return out;
}

double DenseTrajectory::mean(std::size_t component) const
{
    return simpson_mean(this->component(component));
}

double simpson_mean(std::span<const double> values)
{
    const std::size_t n = values.size() - 1;
    if (values.size() < 3 || n % 2 != 0) {
        throw std::invalid_argument("Simpson quadrature needs an even number of intervals");
    }
    double odd = 0.0;
    double even = 0.0;
    for (std::size_t i = 1; i < n; i += 2) {
        odd += values[i];
    }
    for (std::size_t i = 2; i < n; i += 2) {
        even += values[i];
    }
    const double sum = values[0] + values[n] + 4.0 * odd + 2.0 * even;
    return sum / (3.0 * static_cast<double>(n));
}

std::size_t normalize_steps(std::size_t requested)
{
    const std::size_t n = std::max<std::size_t>(requested, 4);
    return n % 2 == 0 ? n : n + 1;
}

DenseTrajectory integrate(const VectorField& rhs, std::span<const double> y0, double period,
                          std::size_t steps, double blowup_limit)
{
    if (!(period > 0.0)) {
        throw std::invalid_argument("integration period must be positive");
    }
    const std::size_t n = normalize_steps(steps);
    const std::size_t dim = y0.size();
    const double h = period / static_cast<double>(n);

    std::vector<double> states((n + 1) * dim);
    std::vector<double> derivs((n + 1) * dim);
    std::vector<double> k2(dim), k3(dim), k4(dim), tmp(dim);

    std::copy(y0.begin(), y0.end(), states.begin());
    rhs(0.0, y0, std::span<double>(derivs.data(), dim));

    auto check = [&](std::span<const double> y, double t) {
        for (double v : y) {
            if (!std::isfinite(v) || std::abs(v) > blowup_limit) {
                throw BlowupError(t);
            }
        }
    };

    for (std::size_t i = 0; i < n; ++i) {
        const double t = period * static_cast<double>(i) / static_cast<double>(n);
        const double* y = states.data() + i * dim;
        const double* k1 = derivs.data() + i * dim;

        for (std::size_t j = 0; j < dim; ++j) tmp[j] = y[j] + 0.5 * h * k1[j];
        rhs(t + 0.5 * h, tmp, k2);
        for (std::size_t j = 0; j < dim; ++j) tmp[j] = y[j] + 0.5 * h * k2[j];
        rhs(t + 0.5 * h, tmp, k3);
        for (std::size_t j = 0; j < dim; ++j) tmp[j] = y[j] + h * k3[j];
        rhs(t + h, tmp, k4);

        double* next = states.data() + (i + 1) * dim;
        for (std::size_t j = 0; j < dim; ++j) {
            next[j] = y[j] + h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        }
        const double t_next = period * static_cast<double>(i + 1) / static_cast<double>(n);
        check(std::span<const double>(next, dim), t_next);
        std::span<double> d_next(derivs.data() + (i + 1) * dim, dim);
        rhs(t_next, std::span<const double>(next, dim), d_next);
        check(d_next, t_next);
    }
    return {period, n, dim, std::move(states), std::move(derivs)};
}

} // namespace perioscope::ivp
