#include "perioscope/continuation.hpp"

#include "perioscope/errors.hpp"
#include "perioscope/linper.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace perioscope::continuation {

void ContinuationConfig::validate() const
{
    if (!(delta_xi > 0.0) || !std::isfinite(delta_xi)) {
        throw ConfigError("delta_xi must be positive");
    }
    if (newton_iters < 1) {
        throw ConfigError("newton_iters must be at least 1");
    }
    if (!(newton_tol > 0.0)) {
        throw ConfigError("newton_tol must be positive");
    }
    if (grid_n < 4) {
        throw ConfigError("grid_N must be at least 4");
    }
    if (!(positivity_floor >= 0.0)) {
        throw ConfigError("positivity_floor must be non-negative");
    }
    if (const auto* h = std::get_if<HomotopyStart>(&init_mode); h && h->steps < 1) {
        throw ConfigError("homotopy step count must be at least 1");
    }
    if (!(mu_cap > 0.0)) {
        throw ConfigError("mu_cap must be positive");
    }
    if (max_halvings < 0 || max_newton_iters < newton_iters) {
        throw ConfigError("max_halvings must be >= 0 and max_newton_iters >= newton_iters");
    }
}

double PeriodicSolution::min_u() const
{
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i <= U.steps(); ++i) m = std::min(m, xi + U.value(i, 0));
    return m;
}

double PeriodicSolution::max_u() const
{
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i <= U.steps(); ++i) m = std::max(m, xi + U.value(i, 0));
    return m;
}

const char* stop_reason_name(StopReason r) noexcept
{
    switch (r) {
    case StopReason::start_point:
        return "start_point";
    case StopReason::reached_target:
        return "reached_target";
    case StopReason::step_limit:
        return "step_limit";
    case StopReason::mu_cap:
        return "mu_cap";
    }
    return "unknown";
}

namespace {

void check_positive(const ivp::DenseTrajectory& U, double xi, double floor)
{
    for (std::size_t i = 0; i <= U.steps(); ++i) {
        const double u = xi + U.value(i, 0);
        if (!(u > floor)) {
            throw PositivityError(U.time(i), u);
        }
    }
}

double sup_difference(const ivp::DenseTrajectory& next, const ivp::DenseTrajectory& prev)
{
    double sup = 0.0;
    const bool same_grid = next.steps() == prev.steps() && next.period() == prev.period();
    for (std::size_t i = 0; i <= next.steps(); ++i) {
        const double old = same_grid ? prev.value(i, 0) : prev.sample(next.time(i), 0);
        sup = std::max(sup, std::abs(next.value(i, 0) - old));
    }
    return sup;
}

PeriodicSolution make_solution(double xi, double mu, ivp::DenseTrajectory U, double residual,
                               int iterations)
{
    PeriodicSolution s;
    s.xi = xi;
    s.mu = mu;
    s.u0 = xi + U.value(0, 0);
    s.du0 = U.value(0, 1);
    s.U = std::move(U);
    s.residual = residual;
    s.iterations = iterations;
    return s;
}

} // namespace

PeriodicSolution newton_correct(const models::ProblemDef& prob, double xi,
                                const ivp::DenseTrajectory& guess, const ContinuationConfig& cfg,
                                NewtonOptions opts)
{
    const int budget = opts.max_iters > 0 ? opts.max_iters : cfg.newton_iters;
    const double k = opts.homotopy_k;
    const double floor = cfg.positivity_floor;

    check_positive(guess, xi, floor);

    ivp::DenseTrajectory current = guess;
    double mu_prev = std::numeric_limits<double>::quiet_NaN();
    double mu = 0.0;
    double defect = std::numeric_limits<double>::infinity();
    int used = 0;

    while (used < budget) {
        const ivp::DenseTrajectory& prev = current;
        // g and g_u at xi + U_prev(t); each half-step time is visited once by the coefficient
        // table and once by the forcing table, in that order
        models::Force cached{};
        double cached_t = std::numeric_limits<double>::quiet_NaN();
        double cached_U = 0.0;
        auto force_at = [&](double t) {
            if (t != cached_t) {
                cached_U = prev.sample(t, 0);
                const double u = xi + cached_U;
                if (!(u > floor)) {
                    throw PositivityError(t, u);
                }
                cached = models::homotopy_nonlinearity(prob, k, t, u);
                cached_t = t;
            }
            return cached;
        };

        linper::LinearPeriodicProblem lp;
        lp.damping = prob.damping();
        lp.period = prob.period();
        lp.steps = cfg.grid_n;
        lp.coeff = [&](double t) { return force_at(t).du; };
        lp.forcing = [&](double t) {
            const models::Force f = force_at(t);
            return prob.forcing()(t) - f.value + f.du * cached_U;
        };

        linper::ZeroAverageResult lin = linper::solve_zero_average(lp);
        ++used;
        mu = lin.mu;
        defect = sup_difference(lin.y, prev) + lin.periodicity_residual;
        if (std::isfinite(mu_prev)) {
            defect += std::abs(mu - mu_prev);
        }
        mu_prev = mu;
        current = std::move(lin.y);
        if (!std::isfinite(defect)) {
            throw ConvergenceError(defect);
        }
        if (defect <= cfg.newton_tol) {
            break;
        }
    }

    if (!(defect <= cfg.divergence_limit)) {
        throw ConvergenceError(defect);
    }
    check_positive(current, xi, floor);
    return make_solution(xi, mu, std::move(current), defect, used);
}

PeriodicSolution solve_at_xi(const models::ProblemDef& prob, double xi,
                             const ivp::DenseTrajectory& guess, const ContinuationConfig& cfg)
{
    PeriodicSolution sol = newton_correct(prob, xi, guess, cfg);
    if (sol.residual <= cfg.newton_tol) {
        return sol;
    }
    const int remaining = cfg.max_newton_iters - sol.iterations;
    if (remaining > 0) {
        PeriodicSolution polished =
            newton_correct(prob, xi, sol.U, cfg, NewtonOptions{remaining, 1.0});
        polished.iterations += sol.iterations;
        sol = std::move(polished);
    }
    if (!(sol.residual <= cfg.newton_tol)) {
        throw ConvergenceError(sol.residual);
    }
    return sol;
}

PeriodicSolution homotopy_base(const models::ProblemDef& prob, double xi,
                               const ContinuationConfig& cfg)
{
    linper::LinearPeriodicProblem lp;
    lp.damping = prob.damping();
    lp.period = prob.period();
    lp.steps = cfg.grid_n;
    lp.coeff = [](double) { return 0.0; };
    lp.forcing = [&prob](double t) { return prob.forcing()(t); };
    linper::ZeroAverageResult lin = linper::solve_zero_average(lp);
    check_positive(lin.y, xi, cfg.positivity_floor);
    const double residual = lin.periodicity_residual;
    return make_solution(xi, lin.mu, std::move(lin.y), residual, 1);
}

PeriodicSolution init_solution(const models::ProblemDef& prob, double xi0,
                               const ContinuationConfig& cfg)
{
    cfg.validate();
    PeriodicSolution sol;
    if (const auto* h = std::get_if<HomotopyStart>(&cfg.init_mode)) {
        sol = homotopy_base(prob, xi0, cfg);
        int total = sol.iterations;
        for (int j = 1; j <= h->steps; ++j) {
            const double k = static_cast<double>(j) / static_cast<double>(h->steps);
            sol = newton_correct(prob, xi0, sol.U, cfg, NewtonOptions{cfg.max_newton_iters, k});
            total += sol.iterations;
        }
        sol.iterations = total;
    } else {
        const auto zero = ivp::DenseTrajectory::zeros(prob.period(),
                                                      ivp::normalize_steps(cfg.grid_n), 2);
        sol = newton_correct(prob, xi0, zero, cfg, NewtonOptions{cfg.max_newton_iters, 1.0});
    }
    if (!(sol.residual <= cfg.newton_tol)) {
        throw ConvergenceError(sol.residual);
    }
    return sol;
}

namespace {

// Points in traversal order (monotone in xi, either direction).
struct Walk {
    std::vector<PeriodicSolution> points;
    TraceEnd end;
};

Walk walk(const models::ProblemDef& prob, const PeriodicSolution& start, double xi_end,
          const ContinuationConfig& cfg)
{
    Walk w;
    w.points.push_back(start);
    const double dir = xi_end >= start.xi ? 1.0 : -1.0;
    double step = cfg.delta_xi;
    double anchor = start.xi;
    int count = 0;
    int halvings = 0;

    for (;;) {
        const PeriodicSolution& cur = w.points.back();
        if (dir * (xi_end - cur.xi) <= 1e-12 * std::max(1.0, std::abs(xi_end))) {
            w.end = {StopReason::reached_target, cur.xi, ""};
            return w;
        }
        double next = anchor + dir * static_cast<double>(count + 1) * step;
        if (dir * (next - xi_end) >= -1e-9 * step) {
            next = xi_end;
        }
        try {
            PeriodicSolution sol = solve_at_xi(prob, next, cur.U, cfg);
            if (std::abs(sol.mu) > cfg.mu_cap) {
                w.end = {StopReason::mu_cap, cur.xi,
                         "|mu| = " + detail::sci(std::abs(sol.mu)) + " at xi = " +
                             detail::sci(next)};
                return w;
            }
            w.points.push_back(std::move(sol));
            ++count;
            if (halvings > 0) {
                // climb back one level toward the configured step
                --halvings;
                step *= 2.0;
                anchor = w.points.back().xi;
                count = 0;
            }
        } catch (const NumericalError& e) {
            if (halvings >= cfg.max_halvings) {
                w.end = {StopReason::step_limit, cur.xi,
                         "at xi = " + detail::sci(next) + ": " + e.what()};
                return w;
            }
            ++halvings;
            step *= 0.5;
            anchor = cur.xi;
            count = 0;
        }
    }
}

} // namespace

SolutionCurve trace_from(const models::ProblemDef& prob, const PeriodicSolution& start,
                         double xi_end, const ContinuationConfig& cfg)
{
    cfg.validate();
    Walk w = walk(prob, start, xi_end, cfg);
    SolutionCurve curve{prob, cfg, {}, {}, {}};
    const TraceEnd origin{StopReason::start_point, start.xi, ""};
    if (xi_end >= start.xi) {
        curve.low_end = origin;
        curve.high_end = std::move(w.end);
        curve.points = std::move(w.points);
    } else {
        curve.low_end = std::move(w.end);
        curve.high_end = origin;
        curve.points.assign(std::make_move_iterator(w.points.rbegin()),
                            std::make_move_iterator(w.points.rend()));
    }
    return curve;
}

SolutionCurve trace_curve(const models::ProblemDef& prob, double xi_start, double xi_end,
                          const ContinuationConfig& cfg)
{
    return trace_from(prob, init_solution(prob, xi_start, cfg), xi_end, cfg);
}

SolutionCurve trace_two_sided(const models::ProblemDef& prob, double xi_init, double xi_low,
                              double xi_high, const ContinuationConfig& cfg)
{
    if (!(xi_low <= xi_init && xi_init <= xi_high)) {
        throw ConfigError("initial xi must lie inside [xi_low, xi_high]");
    }
    const PeriodicSolution start = init_solution(prob, xi_init, cfg);
    Walk up = walk(prob, start, xi_high, cfg);
    Walk down = walk(prob, start, xi_low, cfg);

    SolutionCurve curve{prob, cfg, {}, std::move(down.end), std::move(up.end)};
    curve.points.reserve(up.points.size() + down.points.size() - 1);
    for (auto it = down.points.rbegin(); it != down.points.rend(); ++it) {
        curve.points.push_back(std::move(*it));
    }
    // the shared start point is already in place
    for (std::size_t i = 1; i < up.points.size(); ++i) {
        curve.points.push_back(std::move(up.points[i]));
    }
    return curve;
}

} // namespace perioscope::continuation
