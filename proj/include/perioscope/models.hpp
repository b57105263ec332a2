#pragma once

// The three forced singular problem families
//
//     u'' + c u' + g(t, u) = mu + e(t),   u T-periodic,
//
// with g one of
//     Lazer-Solimini    g = u^-p
//     MEMS              g = b u + a(t) u^-p
//     condensed matter  g = a (u^-4 - u^-3)

#include "perioscope/expr.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace perioscope::models {

/// A T-periodic scalar signal: constant, expression in t, or finite Fourier series.
class PeriodicSignal {
public:
    struct FourierTerm {
        int harmonic = 0;
        double cos_coeff = 0.0;
        double sin_coeff = 0.0;
    };

    PeriodicSignal() = default;

    static PeriodicSignal constant(double value);
    static PeriodicSignal expression(expr::Expression e);
    /// sum_k cos_k cos(k w t) + sin_k sin(k w t), w = 2 pi / period.
    static PeriodicSignal fourier(std::vector<FourierTerm> terms, double period);

    [[nodiscard]] double eval(double t) const;
    double operator()(double t) const { return eval(t); }

    /// Human-readable form used in reports.
    [[nodiscard]] std::string describe() const;

private:
    struct Fourier {
        std::vector<FourierTerm> terms;
        double omega = 0.0;
    };
    std::variant<double, expr::Expression, Fourier> repr_ = 0.0;
};

struct LazerSolimini {
    double p = 1.0;
};

struct Mems {
    double b = 0.0;
    double p = 1.0;
    PeriodicSignal a = PeriodicSignal::constant(1.0);
};

struct CondensedMatter {
    double a = 1.0;
};

using Family = std::variant<LazerSolimini, Mems, CondensedMatter>;

/// Grid used for every numerical check on problem data.
inline constexpr std::size_t kCheckSteps = 2048;
inline constexpr double kZeroMeanTolerance = 1e-8;

/// Validated, immutable problem data.
class ProblemDef {
public:
    /// Throws ConfigError on non-positive period or exponent, non-positive MEMS weight
    /// on the check grid, non-positive condensed-matter strength, or forcing whose
    /// Simpson mean exceeds kZeroMeanTolerance.
    static ProblemDef create(Family family, double damping, double period, PeriodicSignal forcing);

    [[nodiscard]] const Family& family() const noexcept { return family_; }
    [[nodiscard]] std::string family_name() const;
    [[nodiscard]] double damping() const noexcept { return damping_; }
    [[nodiscard]] double period() const noexcept { return period_; }
    [[nodiscard]] double omega() const noexcept;
    [[nodiscard]] const PeriodicSignal& forcing() const noexcept { return forcing_; }

private:
    ProblemDef(Family family, double damping, double period, PeriodicSignal forcing)
        : family_(std::move(family)), damping_(damping), period_(period),
          forcing_(std::move(forcing)) {}

    Family family_;
    double damping_;
    double period_;
    PeriodicSignal forcing_;
};

struct Force {
    double value = 0.0; // g(t, u)
    double du = 0.0;    // g_u(t, u)
};

/// g and g_u. Throws DomainError for u <= 0.
[[nodiscard]] Force nonlinearity(const ProblemDef& prob, double t, double u);

/// k * g and k * g_u for the embedding parameter k in [0, 1].
[[nodiscard]] Force homotopy_nonlinearity(const ProblemDef& prob, double k, double t, double u);

/// sup over u > 0 of g_u (uniform in t).
[[nodiscard]] double slope_supremum(const ProblemDef& prob);

struct HypothesisCheck {
    std::string name;
    std::string description;
    double quantity = 0.0;
    double threshold = 0.0;
    bool passed = false;
};

struct ValidationReport {
    double omega_sq = 0.0;
    double forcing_mean = 0.0;
    double forcing_l2 = 0.0;
    double slope_sup = 0.0;
    std::vector<HypothesisCheck> checks;

    [[nodiscard]] bool all_passed() const;
    [[nodiscard]] const HypothesisCheck* find(std::string_view name) const;
};

/// Evaluates every applicable solvability hypothesis. Never throws on a failed
/// hypothesis; failures are data.
[[nodiscard]] ValidationReport validate(const ProblemDef& prob);

/// L2 norm of the forcing over one period (Simpson on the check grid).
[[nodiscard]] double forcing_l2_norm(const ProblemDef& prob);

/// Max of the forcing over the check grid.
[[nodiscard]] double forcing_max(const ProblemDef& prob);

/// Lower bound eps = (mu + max e)^(-1/p) on every positive periodic solution of the
/// Lazer-Solimini problem; empty when mu + max e <= 0.
[[nodiscard]] std::optional<double> lazer_solimini_lower_bound(double p, double mu,
                                                               double max_forcing);

/// lazer_solimini_lower_bound for a Lazer-Solimini problem; empty for other families.
[[nodiscard]] std::optional<double> lower_bound_guard(const ProblemDef& prob, double mu);

} // namespace perioscope::models
