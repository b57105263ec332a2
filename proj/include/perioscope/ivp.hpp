#pragma once

// Fixed-step classical RK4 on [0, T] with cubic Hermite dense output.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace perioscope::ivp {

/// Right-hand side f(t, y) writing into dydt.
using VectorField = std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

/// States and right-hand sides on a uniform grid t_i = i*T/N, i = 0..N.
/// N is always even so that Simpson quadrature applies on the same grid.
class DenseTrajectory {
public:
    DenseTrajectory() = default;

    /// `states` and `derivs` are row-major (N+1) x dim. Throws std::invalid_argument
    /// on size mismatch, odd N, or non-positive period.
    DenseTrajectory(double period, std::size_t steps, std::size_t dim,
                    std::vector<double> states, std::vector<double> derivs);

    /// Identically zero trajectory.
    static DenseTrajectory zeros(double period, std::size_t steps, std::size_t dim);

    /// Tabulates a known function; `fill(t, state, deriv)` writes both rows.
    static DenseTrajectory tabulate(
        double period, std::size_t steps, std::size_t dim,
        const std::function<void(double, std::span<double>, std::span<double>)>& fill);

    [[nodiscard]] double period() const noexcept { return period_; }
    [[nodiscard]] std::size_t steps() const noexcept { return steps_; }
    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] double step() const noexcept { return period_ / static_cast<double>(steps_); }
    [[nodiscard]] double time(std::size_t i) const noexcept
    {
        return period_ * static_cast<double>(i) / static_cast<double>(steps_);
    }

    [[nodiscard]] std::span<const double> state(std::size_t i) const
    {
        return {states_.data() + i * dim_, dim_};
    }
    [[nodiscard]] std::span<const double> deriv(std::size_t i) const
    {
        return {derivs_.data() + i * dim_, dim_};
    }
    [[nodiscard]] double value(std::size_t i, std::size_t component) const
    {
        return states_[i * dim_ + component];
    }
    [[nodiscard]] double slope(std::size_t i, std::size_t component) const
    {
        return derivs_[i * dim_ + component];
    }

    /// Grid values of one component (N+1 entries).
    [[nodiscard]] std::vector<double> component(std::size_t component) const;

    /// Cubic Hermite interpolation; exact at grid times. Throws std::out_of_range
    /// for t outside [0, T].
    [[nodiscard]] std::vector<double> sample(double t) const;
    [[nodiscard]] double sample(double t, std::size_t component) const;

    /// (1/T) * composite Simpson integral of one component.
    [[nodiscard]] double mean(std::size_t component) const;

    [[nodiscard]] std::span<const double> states() const noexcept { return states_; }
    [[nodiscard]] std::span<const double> derivs() const noexcept { return derivs_; }

private:
    double period_ = 1.0;
    std::size_t steps_ = 0;
    std::size_t dim_ = 0;
    std::vector<double> states_;
    std::vector<double> derivs_;
};

/// Rounds a requested step count up to the nearest even value >= 4.
[[nodiscard]] std::size_t normalize_steps(std::size_t requested);

/// Integrates y' = f(t, y), y(0) = y0 over [0, T] with N RK4 steps (N normalized by
/// normalize_steps). Throws BlowupError when a state turns non-finite or its magnitude
/// exceeds `blowup_limit`.
[[nodiscard]] DenseTrajectory integrate(const VectorField& rhs, std::span<const double> y0,
                                        double period, std::size_t steps,
                                        double blowup_limit = 1e100);

/// Composite Simpson weights-sum of uniformly sampled values, divided by the span.
/// `values.size() - 1` must be even.
[[nodiscard]] double simpson_mean(std::span<const double> values);

} // namespace perioscope::ivp
