#pragma once

// Periodic solutions u = xi + U with prescribed average xi, continued in xi.

#include "perioscope/ivp.hpp"
#include "perioscope/models.hpp"

#include <string>
#include <variant>
#include <vector>

namespace perioscope::continuation {

struct ColdStart {};

/// Walk the embedding parameter k from 0 to 1 in `steps` equal increments.
struct HomotopyStart {
    int steps = 10;
};

using InitMode = std::variant<ColdStart, HomotopyStart>;

struct ContinuationConfig {
    double delta_xi = 0.1;
    int newton_iters = 2;       // nominal Newton budget per continuation step
    double newton_tol = 1e-9;
    std::size_t grid_n = 2048;
    double positivity_floor = 1e-4;
    InitMode init_mode = ColdStart{};
    double mu_cap = 1e4;
    int max_halvings = 6;
    int max_newton_iters = 25;  // budget for cold starts and for polishing a step
    double divergence_limit = 1e-3;

    /// Throws ConfigError when a field is out of range.
    void validate() const;
};

struct PeriodicSolution {
    double xi = 0.0;
    double mu = 0.0;
    ivp::DenseTrajectory U; // components: U, U'
    double u0 = 0.0;
    double du0 = 0.0;
    double residual = 0.0;
    int iterations = 0;

    [[nodiscard]] double u(double t) const { return xi + U.sample(t, 0); }
    [[nodiscard]] double min_u() const;
    [[nodiscard]] double max_u() const;
};

enum class StopReason { start_point, reached_target, step_limit, mu_cap };

[[nodiscard]] const char* stop_reason_name(StopReason r) noexcept;

/// Where and why one end of a traced curve stopped.
struct TraceEnd {
    StopReason reason = StopReason::start_point;
    double xi = 0.0;
    std::string detail;
};

/// Points sorted by strictly increasing xi.
struct SolutionCurve {
    models::ProblemDef problem;
    ContinuationConfig config;
    std::vector<PeriodicSolution> points;
    TraceEnd low_end;
    TraceEnd high_end;
};

struct NewtonOptions {
    int max_iters = 0;      // 0: use config.newton_iters
    double homotopy_k = 1.0;
};

/// Newton's method on U'' + cU' + k g(t, xi + U) = mu + e, mean U = 0, starting from
/// `guess`. Each iterate solves the linearization with the zero-average linear solver.
/// Stops after the iteration budget or once the defect is <= newton_tol; the returned
/// residual may exceed newton_tol. Throws PositivityError, ConvergenceError (defect above
/// divergence_limit), or errors from the linear solver.
[[nodiscard]] PeriodicSolution newton_correct(const models::ProblemDef& prob, double xi,
                                              const ivp::DenseTrajectory& guess,
                                              const ContinuationConfig& cfg,
                                              NewtonOptions opts = {});

/// newton_correct followed, if needed, by polishing up to max_newton_iters total
/// iterations. Throws ConvergenceError if newton_tol is still not met.
[[nodiscard]] PeriodicSolution solve_at_xi(const models::ProblemDef& prob, double xi,
                                           const ivp::DenseTrajectory& guess,
                                           const ContinuationConfig& cfg);

/// The k = 0 solution: mu = 0 and U'' + cU' = e with zero average.
[[nodiscard]] PeriodicSolution homotopy_base(const models::ProblemDef& prob, double xi,
                                             const ContinuationConfig& cfg);

/// First solution of a trace, by cold start or k-homotopy per cfg.init_mode.
[[nodiscard]] PeriodicSolution init_solution(const models::ProblemDef& prob, double xi0,
                                             const ContinuationConfig& cfg);

/// Solves at xi_start and steps toward xi_end, warm-starting each step from the previous
/// U. A failed step is retried at half the step; the step never falls below
/// delta_xi / 2^max_halvings and doubles back one level after each success. The partial
/// curve is returned with the stop reason. Only initialization failures throw.
[[nodiscard]] SolutionCurve trace_curve(const models::ProblemDef& prob, double xi_start,
                                        double xi_end, const ContinuationConfig& cfg);

/// Continues an existing solution toward xi_end (the start point is included).
[[nodiscard]] SolutionCurve trace_from(const models::ProblemDef& prob,
                                       const PeriodicSolution& start, double xi_end,
                                       const ContinuationConfig& cfg);

/// Initializes at xi_init, traces upward to xi_high, then downward to xi_low, and joins
/// both halves into one ascending curve.
[[nodiscard]] SolutionCurve trace_two_sided(const models::ProblemDef& prob, double xi_init,
                                            double xi_low, double xi_high,
                                            const ContinuationConfig& cfg);

} // namespace perioscope::continuation
