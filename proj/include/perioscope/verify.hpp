#pragma once

// Independent checks on computed periodic solutions and solution curves.

#include "perioscope/continuation.hpp"
#include "perioscope/ivp.hpp"
#include "perioscope/models.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace perioscope::verify {

struct VerificationResult {
    double periodicity_value = 0.0; // |u(T) - u(0)|
    double periodicity_slope = 0.0; // |u'(T) - u'(0)|
    double mean_defect = 0.0;       // |mean(u) - xi|
    bool passed = false;
    std::string failure;            // set when re-integration itself failed
};

/// Re-integrates the full nonlinear equation from (u0, du0) at the computed mu on a grid
/// `grid_factor` times finer than the solver's, and compares the endpoint and the mean.
[[nodiscard]] VerificationResult verify_ivp(const models::ProblemDef& prob, double xi, double mu,
                                            double u0, double du0, double tol,
                                            std::size_t steps);

[[nodiscard]] VerificationResult verify_ivp(const models::ProblemDef& prob,
                                            const continuation::PeriodicSolution& sol,
                                            double tol, std::size_t grid_factor = 3);

/// (int f'^2) / (omega^2 int f^2) for uniformly sampled f and f' over one period.
/// Empty when f vanishes. Throws std::invalid_argument when mean f exceeds 1e-8.
[[nodiscard]] std::optional<double> wirtinger_ratio(std::span<const double> values,
                                                    std::span<const double> slopes,
                                                    double period);

/// wirtinger_ratio of component 0 of a trajectory whose derivative is stored.
[[nodiscard]] std::optional<double> wirtinger_ratio(const ivp::DenseTrajectory& f);

struct CurvePoint {
    double xi = 0.0;
    double mu = 0.0;
};

enum class ShapeClass { monotone_decreasing, single_interior_minimum, other };
enum class Trend { decreasing, flat, increasing };

[[nodiscard]] const char* shape_class_name(ShapeClass c) noexcept;
[[nodiscard]] const char* trend_name(Trend t) noexcept;

/// Changes of mu with |delta mu| <= this are plateaus, neither increase nor decrease.
inline constexpr double kPlateauTolerance = 1e-9;

struct ShapeReport {
    ShapeClass classification = ShapeClass::other;
    std::size_t points = 0;
    std::optional<double> xi_min;
    std::optional<double> mu_min;
    std::optional<double> second_diff_at_min;
    std::size_t monotone_violations = 0; // steps where mu increases
    std::size_t direction_changes = 0;
    Trend left_trend = Trend::flat;
    Trend right_trend = Trend::flat;
    double mu_left = 0.0;
    double mu_right = 0.0;
    std::vector<double> zero_crossings;
};

/// Classifies the discrete curve mu(xi). Points are sorted by xi first. Throws
/// std::invalid_argument for fewer than 5 points.
[[nodiscard]] ShapeReport shape_report(std::vector<CurvePoint> points);
[[nodiscard]] ShapeReport shape_report(const continuation::SolutionCurve& curve);

/// Every solution with mu = mu_star along the curve: each sign change of mu - mu_star
/// between neighbours is refined by bisection in xi to |mu - mu_star| <= mu_tol.
[[nodiscard]] std::vector<continuation::PeriodicSolution>
solve_at_mu(const continuation::SolutionCurve& curve, double mu_star, double mu_tol = 1e-7);

struct BoundCheck {
    std::string name;
    double measured = 0.0;
    double bound = 0.0;
    bool passed = false;
};

/// A-priori bounds that apply to the problem family: sup|U| for condensed matter with
/// c != 0, the lower bound on u for Lazer-Solimini.
[[nodiscard]] std::vector<BoundCheck> bound_checks(const models::ProblemDef& prob,
                                                   const continuation::PeriodicSolution& sol);

/// sqrt(T) |e|_2 / (2 sqrt(3) |c|): bound on sup|U| for the condensed-matter family.
[[nodiscard]] double zero_average_part_bound(const models::ProblemDef& prob);

struct MuIdentity {
    double mean_g = 0.0;     // (1/T) int g(t, u(t)) dt
    double max_abs_g = 0.0;  // max over the grid of |g(t, u(t))|
    double defect = 0.0;     // |mu - mean_g|
};

/// Integrating the equation over a period gives mu = mean of g(t, u(t)).
[[nodiscard]] MuIdentity mu_identity(const models::ProblemDef& prob,
                                     const continuation::PeriodicSolution& sol);

} // namespace perioscope::verify
