#include "perioscope/config.hpp"

#include "perioscope/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace perioscope::config {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::string& where, const std::set<std::string>& allowed)
{
    if (!obj.is_object()) {
        throw ConfigError(where + ": expected an object");
    }
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.count(key)) {
            throw ConfigError(where + ": unknown field '" + key + "'");
        }
    }
}

const json& require(const json& obj, const std::string& where, const char* key)
{
    if (!obj.contains(key)) {
        throw ConfigError(where + ": missing field '" + key + "'");
    }
    return obj.at(key);
}

double number(const json& v, const std::string& where)
{
    if (!v.is_number()) {
        throw ConfigError(where + ": expected a number");
    }
    const double x = v.get<double>();
    if (!std::isfinite(x)) {
        throw ConfigError(where + ": must be finite");
    }
    return x;
}

double number_field(const json& obj, const std::string& where, const char* key)
{
    return number(require(obj, where, key), where + "." + key);
}

models::PeriodicSignal signal(const json& v, const std::string& where, double period)
{
    if (v.is_number()) {
        return models::PeriodicSignal::constant(number(v, where));
    }
    if (v.is_string()) {
        try {
            return models::PeriodicSignal::expression(expr::Expression::parse(v.get<std::string>()));
        } catch (const ParseError& e) {
            throw ConfigError(where + ": syntax error " + e.what());
        }
    }
    if (v.is_array()) {
        std::vector<models::PeriodicSignal::FourierTerm> terms;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const std::string at = where + "[" + std::to_string(i) + "]";
            const json& term = v[i];
            reject_unknown(term, at, {"k", "cos", "sin"});
            const double k = number_field(term, at, "k");
            if (k != std::floor(k) || k < 0) {
                throw ConfigError(at + ".k: expected a non-negative integer");
            }
            terms.push_back({static_cast<int>(k),
                             term.contains("cos") ? number(term["cos"], at + ".cos") : 0.0,
                             term.contains("sin") ? number(term["sin"], at + ".sin") : 0.0});
        }
        return models::PeriodicSignal::fourier(std::move(terms), period);
    }
    throw ConfigError(where + ": expected a number, an expression string, or a Fourier list");
}

models::ProblemDef parse_problem(const json& p)
{
    const std::string where = "problem";
    if (!p.is_object()) {
        throw ConfigError("problem: expected an object");
    }
    const json& fam = require(p, where, "family");
    if (!fam.is_string()) {
        throw ConfigError("problem.family: expected a string");
    }
    const std::string family = fam.get<std::string>();

    models::Family def;
    if (family == "lazer_solimini") {
        reject_unknown(p, where, {"family", "c", "T", "e", "p"});
    } else if (family == "mems") {
        reject_unknown(p, where, {"family", "c", "T", "e", "p", "b", "a"});
    } else if (family == "condensed_matter") {
        reject_unknown(p, where, {"family", "c", "T", "e", "a"});
    } else {
        throw ConfigError("problem.family: unknown family '" + family +
                          "' (expected lazer_solimini, mems, condensed_matter)");
    }

    const double c = number_field(p, where, "c");
    const double period = number_field(p, where, "T");
    if (!(period > 0.0)) {
        throw ConfigError("problem.T: must be positive");
    }
    auto forcing = signal(require(p, where, "e"), "problem.e", period);

    if (family == "lazer_solimini") {
        def = models::LazerSolimini{number_field(p, where, "p")};
    } else if (family == "mems") {
        def = models::Mems{number_field(p, where, "b"), number_field(p, where, "p"),
                           signal(require(p, where, "a"), "problem.a", period)};
    } else {
        def = models::CondensedMatter{number_field(p, where, "a")};
    }
    return models::ProblemDef::create(std::move(def), c, period, std::move(forcing));
}

ContinuationBlock parse_continuation(const json& c)
{
    const std::string where = "continuation";
    reject_unknown(c, where,
                   {"xi_start", "xi_end", "xi_init", "delta_xi", "newton_iters", "newton_tol",
                    "grid_N", "init_mode", "homotopy_steps", "positivity_floor", "mu_cap"});
    ContinuationBlock b;
    b.xi_start = number_field(c, where, "xi_start");
    b.xi_end = number_field(c, where, "xi_end");
    if (c.contains("xi_init")) b.xi_init = number(c["xi_init"], "continuation.xi_init");

    auto& s = b.settings;
    auto integer = [&](const char* key) {
        const double v = number(c[key], where + "." + key);
        if (v != std::floor(v) || v < 0) {
            throw ConfigError(where + "." + key + ": expected a non-negative integer");
        }
        return v;
    };
    if (c.contains("delta_xi")) s.delta_xi = number(c["delta_xi"], "continuation.delta_xi");
    if (c.contains("newton_iters")) s.newton_iters = static_cast<int>(integer("newton_iters"));
    if (c.contains("newton_tol")) s.newton_tol = number(c["newton_tol"], "continuation.newton_tol");
    if (c.contains("grid_N")) s.grid_n = static_cast<std::size_t>(integer("grid_N"));
    if (c.contains("positivity_floor")) {
        s.positivity_floor = number(c["positivity_floor"], "continuation.positivity_floor");
    }
    if (c.contains("mu_cap")) s.mu_cap = number(c["mu_cap"], "continuation.mu_cap");

    const std::string mode = c.contains("init_mode") && c["init_mode"].is_string()
                                 ? c["init_mode"].get<std::string>()
                                 : (c.contains("init_mode") ? "?" : "cold");
    if (mode == "cold") {
        if (c.contains("homotopy_steps")) {
            throw ConfigError("continuation.homotopy_steps: only valid with init_mode \"homotopy\"");
        }
        s.init_mode = continuation::ColdStart{};
    } else if (mode == "homotopy") {
        continuation::HomotopyStart h;
        if (c.contains("homotopy_steps")) h.steps = static_cast<int>(integer("homotopy_steps"));
        s.init_mode = h;
    } else {
        throw ConfigError("continuation.init_mode: expected \"cold\" or \"homotopy\"");
    }
    s.validate();

    if (b.xi_init) {
        const double lo = std::min(b.xi_start, b.xi_end);
        const double hi = std::max(b.xi_start, b.xi_end);
        if (*b.xi_init < lo || *b.xi_init > hi) {
            throw ConfigError("continuation.xi_init: must lie between xi_start and xi_end");
        }
    }
    return b;
}

OutputBlock parse_output(const json& o)
{
    const std::string where = "output";
    reject_unknown(o, where, {"csv", "svg", "report", "verbosity"});
    OutputBlock b;
    auto text = [&](const char* key, std::string& dst) {
        if (!o.contains(key)) return;
        if (!o[key].is_string()) throw ConfigError(where + "." + key + ": expected a string");
        dst = o[key].get<std::string>();
    };
    text("csv", b.csv);
    text("svg", b.svg);
    text("report", b.report);
    if (o.contains("verbosity")) {
        b.verbosity = static_cast<int>(number(o["verbosity"], "output.verbosity"));
    }
    return b;
}

} // namespace

RunConfig parse_config(std::string_view json_text)
{
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    reject_unknown(doc, "config", {"problem", "continuation", "output"});
    auto problem = parse_problem(require(doc, "config", "problem"));
    auto cont = parse_continuation(require(doc, "config", "continuation"));
    OutputBlock out = doc.contains("output") ? parse_output(doc["output"]) : OutputBlock{};
    return RunConfig{std::move(problem), std::move(cont), std::move(out), std::string(json_text)};
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::optional<std::string> builtin_config_text(std::string_view name)
{
    if (name == "fig1") {
        return R"json({
  "problem": {"family": "lazer_solimini", "c": 0.5, "T": 1.2, "p": 0.5,
              "e": "6*sin(2*pi*t/1.2)"},
  "continuation": {"xi_start": 0.4, "xi_end": 12, "xi_init": 8, "delta_xi": 0.1,
                   "newton_iters": 2, "grid_N": 2048, "init_mode": "cold"},
  "output": {"csv": "fig1.csv", "svg": "fig1.svg", "report": "fig1.report.json"}
})json";
    }
    if (name == "fig2") {
        return R"json({
  "problem": {"family": "mems", "c": 0.5, "T": 0.8, "b": 2, "p": 3,
              "e": "5*sin(2*pi*t/0.8)", "a": "2+cos(2*pi*t/0.8)^3"},
  "continuation": {"xi_start": 0.3, "xi_end": 8, "xi_init": 4, "delta_xi": 0.1,
                   "newton_iters": 2, "grid_N": 2048, "init_mode": "cold"},
  "output": {"csv": "fig2.csv", "svg": "fig2.svg", "report": "fig2.report.json"}
})json";
    }
    if (name == "fig3") {
        return R"json({
  "problem": {"family": "condensed_matter", "c": 0.3, "T": 1, "a": 3,
              "e": "8*cos(2*pi*t)"},
  "continuation": {"xi_start": 0.3, "xi_end": 8, "xi_init": 4, "delta_xi": 0.1,
                   "newton_iters": 2, "grid_N": 2048, "init_mode": "cold"},
  "output": {"csv": "fig3.csv", "svg": "fig3.svg", "report": "fig3.report.json"}
})json";
    }
    return std::nullopt;
}

void apply_overrides(RunConfig& cfg, std::optional<std::size_t> grid_n,
                     std::optional<double> delta_xi)
{
    if (grid_n) cfg.continuation.settings.grid_n = *grid_n;
    if (delta_xi) cfg.continuation.settings.delta_xi = *delta_xi;
    cfg.continuation.settings.validate();
}

} // namespace perioscope::config
