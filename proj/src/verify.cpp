#include "perioscope/verify.hpp"

#include "perioscope/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace perioscope::verify {

VerificationResult verify_ivp(const models::ProblemDef& prob, double xi, double mu, double u0,
                              double du0, double tol, std::size_t steps)
{
    VerificationResult r;
    const double c = prob.damping();
    auto rhs = [&](double t, std::span<const double> y, std::span<double> dy) {
        dy[0] = y[1];
        dy[1] = mu + prob.forcing()(t) - c * y[1] - models::nonlinearity(prob, t, y[0]).value;
    };
    const double y0[2] = {u0, du0};
    try {
        const auto traj = ivp::integrate(rhs, y0, prob.period(), steps);
        const std::size_t n = traj.steps();
        r.periodicity_value = std::abs(traj.value(n, 0) - u0);
        r.periodicity_slope = std::abs(traj.value(n, 1) - du0);
        r.mean_defect = std::abs(traj.mean(0) - xi);
        r.passed = r.periodicity_value <= tol && r.periodicity_slope <= tol && r.mean_defect <= tol;
    } catch (const NumericalError& e) {
        r.passed = false;
        r.failure = e.what();
        r.periodicity_value = r.periodicity_slope = r.mean_defect =
            std::numeric_limits<double>::infinity();
    }
    return r;
}

VerificationResult verify_ivp(const models::ProblemDef& prob,
                              const continuation::PeriodicSolution& sol, double tol,
                              std::size_t grid_factor)
{
    return verify_ivp(prob, sol.xi, sol.mu, sol.u0, sol.du0, tol, grid_factor * sol.U.steps());
}

std::optional<double> wirtinger_ratio(std::span<const double> values,
                                      std::span<const double> slopes, double period)
{
    if (values.size() != slopes.size()) {
        throw std::invalid_argument("wirtinger_ratio: value and slope samples differ in size");
    }
    const double mean = ivp::simpson_mean(values);
    if (!(std::abs(mean) <= 1e-8)) {
        throw std::invalid_argument("wirtinger_ratio needs a zero-average function");
    }
    std::vector<double> f2(values.size()), df2(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        f2[i] = values[i] * values[i];
        df2[i] = slopes[i] * slopes[i];
    }
    const double energy = ivp::simpson_mean(f2);
    if (energy == 0.0) {
        return std::nullopt;
    }
    const double omega = 2.0 * std::numbers::pi / period;
    return ivp::simpson_mean(df2) / (omega * omega * energy);
}

std::optional<double> wirtinger_ratio(const ivp::DenseTrajectory& f)
{
    std::vector<double> slopes(f.steps() + 1);
    for (std::size_t i = 0; i <= f.steps(); ++i) slopes[i] = f.slope(i, 0);
    return wirtinger_ratio(f.component(0), slopes, f.period());
}

const char* shape_class_name(ShapeClass c) noexcept
{
    switch (c) {
    case ShapeClass::monotone_decreasing:
        return "monotone-decreasing";
    case ShapeClass::single_interior_minimum:
        return "single-interior-minimum";
    case ShapeClass::other:
        return "other";
    }
    return "other";
}

const char* trend_name(Trend t) noexcept
{
    switch (t) {
    case Trend::decreasing:
        return "decreasing";
    case Trend::flat:
        return "flat";
    case Trend::increasing:
        return "increasing";
    }
    return "flat";
}

namespace {

int sign_of_change(double delta)
{
    if (delta > kPlateauTolerance) return 1;
    if (delta < -kPlateauTolerance) return -1;
    return 0;
}

Trend as_trend(int s)
{
    return s > 0 ? Trend::increasing : (s < 0 ? Trend::decreasing : Trend::flat);
}

} // namespace

ShapeReport shape_report(std::vector<CurvePoint> points)
{
    if (points.size() < 5) {
        throw std::invalid_argument("shape_report needs at least 5 curve points");
    }
    std::sort(points.begin(), points.end(),
              [](const CurvePoint& a, const CurvePoint& b) { return a.xi < b.xi; });

    ShapeReport r;
    r.points = points.size();
    r.mu_left = points.front().mu;
    r.mu_right = points.back().mu;

    std::vector<int> signs;
    signs.reserve(points.size() - 1);
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        signs.push_back(sign_of_change(points[i + 1].mu - points[i].mu));
    }
    r.left_trend = as_trend(signs.front());
    r.right_trend = as_trend(signs.back());
    r.monotone_violations =
        static_cast<std::size_t>(std::count(signs.begin(), signs.end(), 1));

    int last = 0;
    bool seen_decrease = false;
    bool increase_before_decrease = false;
    for (int s : signs) {
        if (s == 0) continue;
        if (s < 0) seen_decrease = true;
        if (s > 0 && !seen_decrease) increase_before_decrease = true;
        if (last != 0 && s != last) ++r.direction_changes;
        last = s;
    }

    const auto min_it = std::min_element(points.begin(), points.end(),
                                         [](const auto& a, const auto& b) { return a.mu < b.mu; });
    const auto imin = static_cast<std::size_t>(min_it - points.begin());
    if (imin > 0 && imin + 1 < points.size()) {
        const CurvePoint& a = points[imin - 1];
        const CurvePoint& m = points[imin];
        const CurvePoint& b = points[imin + 1];
        r.xi_min = m.xi;
        r.mu_min = m.mu;
        r.second_diff_at_min =
            2.0 * ((b.mu - m.mu) / (b.xi - m.xi) - (m.mu - a.mu) / (m.xi - a.xi)) / (b.xi - a.xi);
    }

    if (r.monotone_violations == 0 && seen_decrease) {
        r.classification = ShapeClass::monotone_decreasing;
    } else if (r.direction_changes == 1 && !increase_before_decrease && r.xi_min) {
        r.classification = ShapeClass::single_interior_minimum;
    }

    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        const double m0 = points[i].mu;
        const double m1 = points[i + 1].mu;
        if (m0 == 0.0) {
            r.zero_crossings.push_back(points[i].xi);
        } else if ((m0 < 0.0 && m1 > 0.0) || (m0 > 0.0 && m1 < 0.0)) {
            const double s = m0 / (m0 - m1);
            r.zero_crossings.push_back(points[i].xi + s * (points[i + 1].xi - points[i].xi));
        }
    }
    if (points.back().mu == 0.0) {
        r.zero_crossings.push_back(points.back().xi);
    }
    return r;
}

ShapeReport shape_report(const continuation::SolutionCurve& curve)
{
    std::vector<CurvePoint> pts;
    pts.reserve(curve.points.size());
    for (const auto& p : curve.points) pts.push_back({p.xi, p.mu});
    return shape_report(std::move(pts));
}

std::vector<continuation::PeriodicSolution>
solve_at_mu(const continuation::SolutionCurve& curve, double mu_star, double mu_tol)
{
    using continuation::PeriodicSolution;
    std::vector<PeriodicSolution> found;
    const auto& pts = curve.points;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double d0 = pts[i].mu - mu_star;
        if (std::abs(d0) <= mu_tol) {
            // only count a grid hit once, not again as the left end of the next bracket
            if (found.empty() || found.back().xi != pts[i].xi) found.push_back(pts[i]);
            continue;
        }
        if (i + 1 == pts.size()) break;
        const double d1 = pts[i + 1].mu - mu_star;
        if (std::abs(d1) <= mu_tol || (d0 < 0.0) == (d1 < 0.0)) continue;

        PeriodicSolution lo = pts[i];
        PeriodicSolution hi = pts[i + 1];
        const bool lo_below = d0 < 0.0;
        PeriodicSolution best = std::abs(d0) < std::abs(d1) ? lo : hi;
        for (int iter = 0; iter < 200; ++iter) {
            const double xi_mid = 0.5 * (lo.xi + hi.xi);
            if (xi_mid == lo.xi || xi_mid == hi.xi) break;
            const PeriodicSolution& nearer =
                std::abs(xi_mid - lo.xi) <= std::abs(hi.xi - xi_mid) ? lo : hi;
            PeriodicSolution mid =
                continuation::solve_at_xi(curve.problem, xi_mid, nearer.U, curve.config);
            const double dm = mid.mu - mu_star;
            if (std::abs(dm) < std::abs(best.mu - mu_star)) best = mid;
            if (std::abs(dm) <= mu_tol) break;
            if ((dm < 0.0) == lo_below) {
                lo = std::move(mid);
            } else {
                hi = std::move(mid);
            }
        }
        found.push_back(std::move(best));
    }
    return found;
}

double zero_average_part_bound(const models::ProblemDef& prob)
{
    return std::sqrt(prob.period()) * models::forcing_l2_norm(prob) /
           (2.0 * std::sqrt(3.0) * std::abs(prob.damping()));
}

std::vector<BoundCheck> bound_checks(const models::ProblemDef& prob,
                                     const continuation::PeriodicSolution& sol)
{
    std::vector<BoundCheck> checks;
    if (std::holds_alternative<models::CondensedMatter>(prob.family()) && prob.damping() != 0.0) {
        double sup = 0.0;
        for (std::size_t i = 0; i <= sol.U.steps(); ++i) {
            sup = std::max(sup, std::abs(sol.U.value(i, 0)));
        }
        const double bound = zero_average_part_bound(prob);
        checks.push_back({"sup_zero_average_part", sup, bound, sup <= bound});
    }
    if (std::holds_alternative<models::LazerSolimini>(prob.family())) {
        if (const auto eps = models::lower_bound_guard(prob, sol.mu)) {
            const double lowest = sol.min_u();
            checks.push_back({"lower_bound", lowest, *eps, lowest >= *eps});
        }
    }
    return checks;
}

MuIdentity mu_identity(const models::ProblemDef& prob, const continuation::PeriodicSolution& sol)
{
    std::vector<double> g(sol.U.steps() + 1);
    MuIdentity r;
    for (std::size_t i = 0; i <= sol.U.steps(); ++i) {
        g[i] = models::nonlinearity(prob, sol.U.time(i), sol.xi + sol.U.value(i, 0)).value;
        r.max_abs_g = std::max(r.max_abs_g, std::abs(g[i]));
    }
    r.mean_g = ivp::simpson_mean(g);
    r.defect = std::abs(sol.mu - r.mean_g);
    return r;
}

} // namespace perioscope::verify
