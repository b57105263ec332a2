#pragma once

// CSV and SVG emission for solution curves.

#include "perioscope/continuation.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace perioscope::output {

/// One CSV row: xi, mu, u0, du0, min_u, max_u, residual, newton_iters_used.
struct CurveRow {
    double xi = 0.0;
    double mu = 0.0;
    double u0 = 0.0;
    double du0 = 0.0;
    double min_u = 0.0;
    double max_u = 0.0;
    double residual = 0.0;
    int newton_iters_used = 0;
};

inline constexpr const char* kCsvHeader =
    "xi,mu,u0,du0,min_u,max_u,residual,newton_iters_used";

[[nodiscard]] std::vector<CurveRow> curve_rows(const continuation::SolutionCurve& curve);

/// Header plus one row per point, doubles with 17 significant digits.
void write_csv(std::ostream& out, const std::vector<CurveRow>& rows);

/// Throws ConfigError on a malformed header or row.
[[nodiscard]] std::vector<CurveRow> read_csv(std::istream& in);

/// Standalone SVG: one polyline of (xi, mu) with axes and tick labels.
void write_svg(std::ostream& out, const std::vector<CurveRow>& rows, const std::string& title);

} // namespace perioscope::output
