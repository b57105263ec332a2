#pragma once

// JSON run configuration:
//
// {
//   "problem": {
//     "family": "lazer_solimini" | "mems" | "condensed_matter",
//     "c": 0.5, "T": 1.2,
//     "e": "6*sin(2*pi*t/1.2)",          // or a number, or [{"k":1,"cos":0,"sin":6}, ...]
//     "p": 0.5,                          // lazer_solimini, mems
//     "b": 2,                            // mems
//     "a": "2+cos(2*pi*t/0.8)^3"         // mems (signal) or condensed_matter (number)
//   },
//   "continuation": {
//     "xi_start": 0.4, "xi_end": 12, "xi_init": 8,
//     "delta_xi": 0.1, "newton_iters": 2, "newton_tol": 1e-9, "grid_N": 2048,
//     "init_mode": "cold" | "homotopy", "homotopy_steps": 10,
//     "positivity_floor": 1e-4, "mu_cap": 1e4
//   },
//   "output": { "csv": "curve.csv", "svg": "curve.svg", "report": "report.json",
//               "verbosity": 1 }
// }
//
// Unknown fields are rejected.

#include "perioscope/continuation.hpp"
#include "perioscope/models.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace perioscope::config {

struct ContinuationBlock {
    double xi_start = 0.0;
    double xi_end = 0.0;
    std::optional<double> xi_init; // when set, trace two-sided from here
    continuation::ContinuationConfig settings;
};

struct OutputBlock {
    std::string csv = "curve.csv";
    std::string svg = "curve.svg";
    std::string report = "report.json";
    int verbosity = 1;
};

struct RunConfig {
    models::ProblemDef problem;
    ContinuationBlock continuation;
    OutputBlock output;
    std::string source; // the JSON text it was read from
};

/// Throws ConfigError (with the offending field and, for expressions, the byte offset).
[[nodiscard]] RunConfig parse_config(std::string_view json_text);
[[nodiscard]] RunConfig load_config(const std::string& path);

/// Built-in configurations of the three worked examples: "fig1", "fig2", "fig3".
[[nodiscard]] std::optional<std::string> builtin_config_text(std::string_view name);

/// Applies the --grid-n / --delta-xi command-line overrides and re-validates.
void apply_overrides(RunConfig& cfg, std::optional<std::size_t> grid_n,
                     std::optional<double> delta_xi);

} // namespace perioscope::config
