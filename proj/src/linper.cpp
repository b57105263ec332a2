#include "perioscope/linper.hpp"

#include "perioscope/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace perioscope::linper {

namespace {

using simd::kLanes;

// Lane roles used by both solvers.
struct Basis {
    std::size_t steps = 0;
    double period = 1.0;
    simd::LinearBatchOutput data;

    double value_end(std::size_t lane) const { return data.value[steps * kLanes + lane]; }
    double slope_end(std::size_t lane) const { return data.slope[steps * kLanes + lane]; }
};

Basis integrate_basis(const LinearPeriodicProblem& prob, const std::array<double, kLanes>& scale,
                      const std::array<double, kLanes>& offset,
                      const std::array<double, kLanes>& value0,
                      const std::array<double, kLanes>& slope0, simd::Isa isa)
{
    if (!(prob.period > 0.0)) {
        throw std::invalid_argument("linear problem period must be positive");
    }
    if (!prob.coeff || !prob.forcing) {
        throw std::invalid_argument("linear problem needs coefficient and forcing functions");
    }
    const std::size_t n = ivp::normalize_steps(prob.steps);
    std::vector<double> coeff(2 * n + 1);
    std::vector<double> forcing(2 * n + 1);
    for (std::size_t k = 0; k <= 2 * n; ++k) {
        const double t = prob.period * static_cast<double>(k) / static_cast<double>(2 * n);
        coeff[k] = prob.coeff(t);
        forcing[k] = prob.forcing(t);
    }

    simd::LinearBatchInput in;
    in.damping = prob.damping;
    in.period = prob.period;
    in.steps = n;
    in.coeff = coeff;
    in.forcing = forcing;
    in.forcing_scale = scale;
    in.forcing_offset = offset;
    in.value0 = value0;
    in.slope0 = slope0;

    Basis basis;
    basis.steps = n;
    basis.period = prob.period;
    simd::integrate_linear_batch(in, basis.data, isa);
    const auto finite = [](double v) { return std::isfinite(v); };
    if (!std::all_of(basis.data.value.begin(), basis.data.value.end(), finite) ||
        !std::all_of(basis.data.slope.begin(), basis.data.slope.end(), finite)) {
        throw BlowupError(prob.period);
    }
    return basis;
}

ivp::DenseTrajectory combine(const Basis& basis, const std::array<double, kLanes>& w,
                             simd::Isa isa)
{
    const std::size_t points = basis.steps + 1;
    std::vector<double> value(points), slope(points), accel(points);
    simd::combine_lanes(basis.data.value, w, value, isa);
    simd::combine_lanes(basis.data.slope, w, slope, isa);
    simd::combine_lanes(basis.data.accel, w, accel, isa);

    std::vector<double> states(2 * points), derivs(2 * points);
    for (std::size_t i = 0; i < points; ++i) {
        states[2 * i] = value[i];
        states[2 * i + 1] = slope[i];
        derivs[2 * i] = slope[i];
        derivs[2 * i + 1] = accel[i];
    }
    return {basis.period, basis.steps, 2, std::move(states), std::move(derivs)};
}

double periodicity_residual(const ivp::DenseTrajectory& y)
{
    const std::size_t n = y.steps();
    return std::abs(y.value(n, 0) - y.value(0, 0)) + std::abs(y.value(n, 1) - y.value(0, 1));
}

// sigma_min(A) / max(1, sigma_max(A)): near zero when A is singular relative to the O(1)
// scale of the monodromy data, but only ~1/|Phi| when the basis merely grows fast.
template <int Rows>
double scaled_determinant(const Eigen::Matrix<double, Rows, Rows>& a)
{
    const Eigen::JacobiSVD<Eigen::Matrix<double, Rows, Rows>> svd(a);
    const auto& s = svd.singularValues();
    if (!s.allFinite()) {
        return 0.0;
    }
    return s(Rows - 1) / std::max(1.0, s(0));
}

} // namespace

PeriodicSolveResult solve_periodic(const LinearPeriodicProblem& prob, simd::Isa isa)
{
    // lane 0: particular Y, Y(0)=0, Y'(0)=1; lane 1: y1 (0, 1); lane 2: y2 (1, 0); lane 3 idle
    const Basis basis = integrate_basis(prob, {1.0, 0.0, 0.0, 0.0}, {0.0, 0.0, 0.0, 0.0},
                                        {0.0, 0.0, 1.0, 0.0}, {1.0, 1.0, 0.0, 0.0}, isa);

    Eigen::Matrix2d a;
    a << basis.value_end(1), basis.value_end(2) - 1.0,
        basis.slope_end(1) - 1.0, basis.slope_end(2);
    const Eigen::Vector2d rhs(-basis.value_end(0), 1.0 - basis.slope_end(0));

    const double det = scaled_determinant<2>(a);
    if (!(det >= kSingularThreshold)) {
        throw ResonanceError(det);
    }
    const Eigen::Vector2d k = a.fullPivLu().solve(rhs);

    PeriodicSolveResult result;
    result.y = combine(basis, {1.0, k(0), k(1), 0.0}, isa);
    result.periodicity_residual = periodicity_residual(result.y);
    result.scaled_determinant = det;
    return result;
}

ZeroAverageResult solve_zero_average(const LinearPeriodicProblem& prob, simd::Isa isa)
{
    // lane 0: Y_f (L[y] = f, zero data); lane 1: Y_1 (L[y] = 1, zero data);
    // lane 2: y1 (0, 1); lane 3: y2 (1, 0)
    const Basis basis = integrate_basis(prob, {1.0, 0.0, 0.0, 0.0}, {0.0, 1.0, 0.0, 0.0},
                                        {0.0, 0.0, 0.0, 1.0}, {0.0, 0.0, 1.0, 0.0}, isa);
    const auto means = simd::simpson_lane_means(basis.data.value, isa);

    // unknowns (c1, c2, mu)
    Eigen::Matrix3d a;
    a << basis.value_end(2), basis.value_end(3) - 1.0, basis.value_end(1),
        basis.slope_end(2) - 1.0, basis.slope_end(3), basis.slope_end(1),
        means[2], means[3], means[1];
    const Eigen::Vector3d rhs(-basis.value_end(0), -basis.slope_end(0), -means[0]);

    const double det = scaled_determinant<3>(a);
    if (!(det >= kSingularThreshold)) {
        throw SingularSystemError(det);
    }
    const Eigen::Vector3d k = a.fullPivLu().solve(rhs);

    ZeroAverageResult result;
    result.mu = k(2);
    result.y = combine(basis, {1.0, k(2), k(0), k(1)}, isa);
    result.periodicity_residual = periodicity_residual(result.y);
    result.mean_residual = std::abs(result.y.mean(0));
    result.scaled_determinant = det;
    return result;
}

ZeroAverageResult solve_zero_average_two_stage(const LinearPeriodicProblem& prob, simd::Isa isa)
{
    const PeriodicSolveResult forced = solve_periodic(prob, isa);
    LinearPeriodicProblem unit = prob;
    unit.forcing = [](double) { return 1.0; };
    const PeriodicSolveResult constant = solve_periodic(unit, isa);

    const double mean_forced = forced.y.mean(0);
    const double mean_constant = constant.y.mean(0);
    if (!(std::abs(mean_constant) > 0.0)) {
        throw SingularSystemError(0.0);
    }
    const double mu = -mean_forced / mean_constant;

    const std::size_t count = forced.y.states().size();
    std::vector<double> states(count), derivs(count);
    for (std::size_t i = 0; i < count; ++i) {
        states[i] = forced.y.states()[i] + mu * constant.y.states()[i];
        derivs[i] = forced.y.derivs()[i] + mu * constant.y.derivs()[i];
    }

    ZeroAverageResult result;
    result.mu = mu;
    result.y = ivp::DenseTrajectory(prob.period, forced.y.steps(), 2, std::move(states),
                                    std::move(derivs));
    result.periodicity_residual = periodicity_residual(result.y);
    result.mean_residual = std::abs(result.y.mean(0));
    result.scaled_determinant = std::min(forced.scaled_determinant, constant.scaled_determinant);
    return result;
}

} // namespace perioscope::linper
