#include "perioscope/output.hpp"

#include "perioscope/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace perioscope::output {

namespace {

std::string fmt17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_short(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

std::string xml_escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

// Tick positions at 1, 2 or 5 times a power of ten, about `target` of them.
std::vector<double> nice_ticks(double lo, double hi, int target = 6)
{
    if (!(hi > lo)) {
        return {lo};
    }
    const double raw = (hi - lo) / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double norm = raw / mag;
    const double step = (norm < 1.5 ? 1.0 : norm < 3.5 ? 2.0 : norm < 7.5 ? 5.0 : 10.0) * mag;
    std::vector<double> ticks;
    for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * step; t += step) {
        ticks.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
    }
    return ticks;
}

} // namespace

std::vector<CurveRow> curve_rows(const continuation::SolutionCurve& curve)
{
    std::vector<CurveRow> rows;
    rows.reserve(curve.points.size());
    for (const auto& p : curve.points) {
        rows.push_back({p.xi, p.mu, p.u0, p.du0, p.min_u(), p.max_u(), p.residual, p.iterations});
    }
    return rows;
}

void write_csv(std::ostream& out, const std::vector<CurveRow>& rows)
{
    out << kCsvHeader << '\n';
    for (const auto& r : rows) {
        out << fmt17(r.xi) << ',' << fmt17(r.mu) << ',' << fmt17(r.u0) << ',' << fmt17(r.du0)
            << ',' << fmt17(r.min_u) << ',' << fmt17(r.max_u) << ',' << fmt17(r.residual) << ','
            << r.newton_iters_used << '\n';
    }
}

std::vector<CurveRow> read_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
        throw ConfigError("curve CSV: missing or unexpected header");
    }
    std::vector<CurveRow> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<double> fields;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            char* end = nullptr;
            const double v = std::strtod(cell.c_str(), &end);
            if (end == cell.c_str() || *end != '\0') {
                throw ConfigError("curve CSV line " + std::to_string(lineno) +
                                  ": malformed number '" + cell + "'");
            }
            fields.push_back(v);
        }
        if (fields.size() != 8) {
            throw ConfigError("curve CSV line " + std::to_string(lineno) + ": expected 8 fields");
        }
        rows.push_back({fields[0], fields[1], fields[2], fields[3], fields[4], fields[5],
                        fields[6], static_cast<int>(fields[7])});
    }
    return rows;
}

void write_svg(std::ostream& out, const std::vector<CurveRow>& rows, const std::string& title)
{
    constexpr double width = 640, height = 480;
    constexpr double left = 70, right = 20, top = 40, bottom = 50;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    double xlo = 0, xhi = 1, ylo = 0, yhi = 1;
    if (!rows.empty()) {
        const auto [xmin, xmax] = std::minmax_element(
            rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.xi < b.xi; });
        const auto [ymin, ymax] = std::minmax_element(
            rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.mu < b.mu; });
        xlo = xmin->xi;
        xhi = xmax->xi;
        ylo = ymin->mu;
        yhi = ymax->mu;
    }
    if (!(xhi > xlo)) { xlo -= 0.5; xhi += 0.5; }
    if (!(yhi > ylo)) { ylo -= 0.5; yhi += 0.5; }
    const double pad = 0.05 * (yhi - ylo);
    ylo -= pad;
    yhi += pad;

    auto px = [&](double x) { return left + (x - xlo) / (xhi - xlo) * plot_w; };
    auto py = [&](double y) { return top + (yhi - y) / (yhi - ylo) * plot_h; };

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"16\">"
        << xml_escape(title) << "</text>\n";

    // axes box
    out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w << "\" height=\""
        << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
    for (double t : nice_ticks(xlo, xhi)) {
        const double x = px(t);
        out << "<line x1=\"" << x << "\" y1=\"" << top + plot_h << "\" x2=\"" << x << "\" y2=\""
            << top + plot_h + 5 << "\" stroke=\"black\"/>"
            << "<text x=\"" << x << "\" y=\"" << top + plot_h + 19
            << "\" text-anchor=\"middle\">" << fmt_short(t) << "</text>\n";
    }
    for (double t : nice_ticks(ylo, yhi)) {
        const double y = py(t);
        out << "<line x1=\"" << left - 5 << "\" y1=\"" << y << "\" x2=\"" << left << "\" y2=\""
            << y << "\" stroke=\"black\"/>"
            << "<text x=\"" << left - 8 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">"
            << fmt_short(t) << "</text>\n";
    }
    if (ylo < 0.0 && yhi > 0.0) {
        out << "<line x1=\"" << left << "\" y1=\"" << py(0.0) << "\" x2=\"" << left + plot_w
            << "\" y2=\"" << py(0.0) << "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
    }
    out << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 10
        << "\" text-anchor=\"middle\">&#958; (average of u)</text>\n"
        << "<text x=\"16\" y=\"" << top + plot_h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << top + plot_h / 2 << ")\">&#956;</text>\n"
        << "</g>\n";

    out << "<polyline fill=\"none\" stroke=\"#1f5fbf\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i) out << ' ';
        out << px(rows[i].xi) << ',' << py(rows[i].mu);
    }
    out << "\"/>\n</svg>\n";
}

} // namespace perioscope::output
