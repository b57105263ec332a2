#include "perioscope/models.hpp"

#include "perioscope/errors.hpp"
#include "perioscope/ivp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

namespace perioscope::models {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::vector<double> tabulate(const PeriodicSignal& s, double period)
{
    std::vector<double> values(kCheckSteps + 1);
    for (std::size_t i = 0; i <= kCheckSteps; ++i) {
        values[i] = s(period * static_cast<double>(i) / static_cast<double>(kCheckSteps));
    }
    return values;
}

std::string number(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// 3^5 / 5^5: the value of u^5 g_u / a at its maximiser u = 5/3 for the condensed-matter g
constexpr double kCondensedSlopeFactor = 243.0 / 3125.0;

} // namespace

PeriodicSignal PeriodicSignal::constant(double value)
{
    PeriodicSignal s;
    s.repr_ = value;
    return s;
}

PeriodicSignal PeriodicSignal::expression(expr::Expression e)
{
    PeriodicSignal s;
    s.repr_ = std::move(e);
    return s;
}

PeriodicSignal PeriodicSignal::fourier(std::vector<FourierTerm> terms, double period)
{
    if (!(period > 0.0)) {
        throw ConfigError("Fourier signal needs a positive period");
    }
    for (const auto& term : terms) {
        if (term.harmonic < 0) {
            throw ConfigError("Fourier harmonic index must be non-negative");
        }
    }
    PeriodicSignal s;
    s.repr_ = Fourier{std::move(terms), 2.0 * std::numbers::pi / period};
    return s;
}

double PeriodicSignal::eval(double t) const
{
    return std::visit(overloaded{
                          [](double v) { return v; },
                          [t](const expr::Expression& e) { return e.eval(t); },
                          [t](const Fourier& f) {
                              double sum = 0.0;
                              for (const auto& term : f.terms) {
                                  const double arg = term.harmonic * f.omega * t;
                                  sum += term.cos_coeff * std::cos(arg) +
                                         term.sin_coeff * std::sin(arg);
                              }
                              return sum;
                          },
                      },
                      repr_);
}

std::string PeriodicSignal::describe() const
{
    return std::visit(overloaded{
                          [](double v) { return number(v); },
                          [](const expr::Expression& e) { return e.source(); },
                          [](const Fourier& f) {
                              std::string out = "fourier[";
                              for (std::size_t i = 0; i < f.terms.size(); ++i) {
                                  if (i) out += ", ";
                                  out += "(" + std::to_string(f.terms[i].harmonic) + ", " +
                                         number(f.terms[i].cos_coeff) + ", " +
                                         number(f.terms[i].sin_coeff) + ")";
                              }
                              return out + "]";
                          },
                      },
                      repr_);
}

ProblemDef ProblemDef::create(Family family, double damping, double period,
                              PeriodicSignal forcing)
{
    if (!std::isfinite(period) || !(period > 0.0)) {
        throw ConfigError("period T must be positive and finite");
    }
    if (!std::isfinite(damping)) {
        throw ConfigError("damping c must be finite");
    }
    std::visit(overloaded{
                   [](const LazerSolimini& f) {
                       if (!(f.p > 0.0) || !std::isfinite(f.p)) {
                           throw ConfigError("Lazer-Solimini exponent p must be positive");
                       }
                   },
                   [period](const Mems& f) {
                       if (!(f.p > 0.0) || !std::isfinite(f.p)) {
                           throw ConfigError("MEMS exponent p must be positive");
                       }
                       if (!std::isfinite(f.b)) {
                           throw ConfigError("MEMS spring constant b must be finite");
                       }
                       const auto a = tabulate(f.a, period);
                       const auto lowest = std::min_element(a.begin(), a.end());
                       if (!(*lowest > 0.0)) {
                           throw ConfigError("MEMS weight a(t) must be positive; a(" +
                                             number(period * static_cast<double>(lowest - a.begin()) /
                                                    static_cast<double>(kCheckSteps)) +
                                             ") = " + number(*lowest));
                       }
                   },
                   [](const CondensedMatter& f) {
                       if (!(f.a > 0.0) || !std::isfinite(f.a)) {
                           throw ConfigError("condensed-matter strength a must be positive");
                       }
                   },
               },
               family);

    const double mean = ivp::simpson_mean(tabulate(forcing, period));
    if (!(std::abs(mean) <= kZeroMeanTolerance)) {
        throw ConfigError("forcing e(t) must have zero average; numerical mean is " +
                          number(mean));
    }
    return {std::move(family), damping, period, std::move(forcing)};
}

std::string ProblemDef::family_name() const
{
    return std::visit(overloaded{
                          [](const LazerSolimini&) { return std::string("lazer_solimini"); },
                          [](const Mems&) { return std::string("mems"); },
                          [](const CondensedMatter&) { return std::string("condensed_matter"); },
                      },
                      family_);
}

double ProblemDef::omega() const noexcept
{
    return 2.0 * std::numbers::pi / period_;
}

Force nonlinearity(const ProblemDef& prob, double t, double u)
{
    if (!(u > 0.0)) {
        throw DomainError("singular nonlinearity evaluated at u = " + number(u) +
                          " (t = " + number(t) + ")");
    }
    return std::visit(overloaded{
                          [u](const LazerSolimini& f) {
                              const double inv_p = std::pow(u, -f.p);
                              return Force{inv_p, -f.p * inv_p / u};
                          },
                          [t, u](const Mems& f) {
                              const double weight = f.a(t);
                              const double inv_p = std::pow(u, -f.p);
                              return Force{f.b * u + weight * inv_p,
                                           f.b - f.p * weight * inv_p / u};
                          },
                          [u](const CondensedMatter& f) {
                              const double inv = 1.0 / u;
                              const double inv3 = inv * inv * inv;
                              const double inv4 = inv3 * inv;
                              return Force{f.a * (inv4 - inv3),
                                           f.a * (-4.0 * inv4 * inv + 3.0 * inv4)};
                          },
                      },
                      prob.family());
}

Force homotopy_nonlinearity(const ProblemDef& prob, double k, double t, double u)
{
    const Force f = nonlinearity(prob, t, u);
    if (k == 1.0) {
        return f;
    }
    return {k * f.value, k * f.du};
}

double slope_supremum(const ProblemDef& prob)
{
    return std::visit(overloaded{
                          [](const LazerSolimini&) { return 0.0; },
                          [](const Mems& f) { return f.b; },
                          [](const CondensedMatter& f) { return f.a * kCondensedSlopeFactor; },
                      },
                      prob.family());
}

double forcing_l2_norm(const ProblemDef& prob)
{
    auto values = tabulate(prob.forcing(), prob.period());
    for (double& v : values) v *= v;
    return std::sqrt(prob.period() * ivp::simpson_mean(values));
}

double forcing_max(const ProblemDef& prob)
{
    const auto values = tabulate(prob.forcing(), prob.period());
    return *std::max_element(values.begin(), values.end());
}

bool ValidationReport::all_passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

const HypothesisCheck* ValidationReport::find(std::string_view name) const
{
    for (const auto& c : checks) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

ValidationReport validate(const ProblemDef& prob)
{
    ValidationReport report;
    const double w2 = prob.omega() * prob.omega();
    report.omega_sq = w2;
    report.forcing_mean = ivp::simpson_mean(tabulate(prob.forcing(), prob.period()));
    report.forcing_l2 = forcing_l2_norm(prob);
    report.slope_sup = slope_supremum(prob);

    report.checks.push_back({"zero_average_forcing", "|mean e| <= 1e-8",
                             std::abs(report.forcing_mean), kZeroMeanTolerance,
                             std::abs(report.forcing_mean) <= kZeroMeanTolerance});
    report.checks.push_back({"slope_below_omega_sq", "sup_u g_u < omega^2", report.slope_sup, w2,
                             report.slope_sup < w2});

    if (const auto* mems = std::get_if<Mems>(&prob.family())) {
        report.checks.push_back({"spring_window", "0 < b < omega^2", mems->b, w2,
                                 mems->b > 0.0 && mems->b < w2});
    }
    if (const auto* cm = std::get_if<CondensedMatter>(&prob.family())) {
        const double slope_bound = cm->a * kCondensedSlopeFactor;
        report.checks.push_back({"slope_bound", "a * 3^5/5^5 < omega^2", slope_bound, w2,
                                 slope_bound < w2});
        const double c = std::abs(prob.damping());
        const double ratio = c > 0.0 ? std::sqrt(3.0 * prob.period()) * report.forcing_l2 / c
                                     : std::numeric_limits<double>::infinity();
        report.checks.push_back({"forcing_damping_ratio", "sqrt(3T) |e|_2 / |c| < 1", ratio, 1.0,
                                 ratio < 1.0});
    }
    return report;
}

std::optional<double> lazer_solimini_lower_bound(double p, double mu, double max_forcing)
{
    const double load = mu + max_forcing;
    if (!(load > 0.0)) {
        return std::nullopt;
    }
    return std::pow(load, -1.0 / p);
}

std::optional<double> lower_bound_guard(const ProblemDef& prob, double mu)
{
    if (const auto* ls = std::get_if<LazerSolimini>(&prob.family())) {
        return lazer_solimini_lower_bound(ls->p, mu, forcing_max(prob));
    }
    return std::nullopt;
}

} // namespace perioscope::models
