#pragma once
// Shared fixtures: the three worked-example problems and their traced curves.

#include "perioscope/config.hpp"
#include "perioscope/continuation.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace perioscope::testing {

inline config::RunConfig example_config(const std::string& name)
{
    return config::parse_config(*config::builtin_config_text(name));
}

inline models::ProblemDef example_problem(const std::string& name)
{
    return example_config(name).problem;
}

inline continuation::SolutionCurve trace_example(const config::RunConfig& cfg)
{
    const auto& c = cfg.continuation;
    const double lo = std::min(c.xi_start, c.xi_end);
    const double hi = std::max(c.xi_start, c.xi_end);
    return continuation::trace_two_sided(cfg.problem, c.xi_init.value_or(c.xi_start), lo, hi,
                                         c.settings);
}

/// Traced once per process and reused.
inline const continuation::SolutionCurve& example_curve(const std::string& name)
{
    static std::map<std::string, continuation::SolutionCurve> cache;
    auto it = cache.find(name);
    if (it == cache.end()) {
        it = cache.emplace(name, trace_example(example_config(name))).first;
    }
    return it->second;
}

} // namespace perioscope::testing
