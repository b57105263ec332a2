#include "perioscope/cli.hpp"

#include "perioscope/config.hpp"
#include "perioscope/errors.hpp"
#include "perioscope/output.hpp"
#include "perioscope/simd/kernels.hpp"
#include "perioscope/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

namespace perioscope::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr double kVerifyTolerance = 1e-5;
constexpr std::size_t kVerifyGridFactor = 3;

struct Options {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::size_t> grid_n;
    std::optional<double> delta_xi;
    std::string example;
};

class Session {
public:
    Session(config::RunConfig cfg, fs::path out_dir, std::ostream& out, std::ostream& err)
        : cfg_(std::move(cfg)), out_dir_(std::move(out_dir)), out_(out), err_(err)
    {
        fs::create_directories(out_dir_);
        load_report();
    }

    int trace();
    int verify();
    int analyze();

    void save_report() const
    {
        std::ofstream f(path(cfg_.output.report));
        f << report_.dump(2) << '\n';
    }

private:
    fs::path path(const std::string& p) const
    {
        const fs::path candidate(p);
        return candidate.is_absolute() ? candidate : out_dir_ / candidate;
    }

    void load_report()
    {
        std::ifstream f(path(cfg_.output.report));
        if (!f) return;
        try {
            report_ = json::parse(f);
        } catch (const json::parse_error&) {
            report_ = json::object();
        }
        if (!report_.is_object()) report_ = json::object();
    }

    std::vector<output::CurveRow> read_curve() const
    {
        std::ifstream f(path(cfg_.output.csv));
        if (!f) {
            throw ConfigError("no curve data at '" + path(cfg_.output.csv).string() +
                              "'; run 'trace' first");
        }
        return output::read_csv(f);
    }

    bool loud() const { return cfg_.output.verbosity >= 1; }

    config::RunConfig cfg_;
    fs::path out_dir_;
    std::ostream& out_;
    std::ostream& err_;
    json report_ = json::object();
};

json end_json(const continuation::TraceEnd& e)
{
    return {{"reason", continuation::stop_reason_name(e.reason)}, {"xi", e.xi}, {"detail", e.detail}};
}

int Session::trace()
{
    const auto& prob = cfg_.problem;
    const auto& cont = cfg_.continuation;

    const auto validation = models::validate(prob);
    json checks = json::array();
    for (const auto& c : validation.checks) {
        checks.push_back({{"name", c.name}, {"condition", c.description}, {"quantity", c.quantity},
                          {"threshold", c.threshold}, {"passed", c.passed}});
        if (!c.passed && loud()) {
            err_ << "warning: hypothesis " << c.name << " (" << c.description << ") fails: "
                 << c.quantity << " vs " << c.threshold << '\n';
        }
    }
    report_["validation"] = {{"family", prob.family_name()},
                             {"forcing", prob.forcing().describe()},
                             {"omega_sq", validation.omega_sq},
                             {"forcing_mean", validation.forcing_mean},
                             {"forcing_l2", validation.forcing_l2},
                             {"slope_sup", validation.slope_sup},
                             {"checks", checks}};

    const double lo = std::min(cont.xi_start, cont.xi_end);
    const double hi = std::max(cont.xi_start, cont.xi_end);
    const auto curve = cont.xi_init
                           ? continuation::trace_two_sided(prob, *cont.xi_init, lo, hi, cont.settings)
                           : continuation::trace_curve(prob, cont.xi_start, cont.xi_end, cont.settings);

    const auto rows = output::curve_rows(curve);
    {
        std::ofstream csv(path(cfg_.output.csv));
        output::write_csv(csv, rows);
    }
    {
        std::ofstream svg(path(cfg_.output.svg));
        output::write_svg(svg, rows, prob.family_name() + ": mu versus average xi");
    }

    std::size_t nominal = 0;
    double worst_identity = 0.0;
    std::size_t mu_bound_violations = 0;
    std::size_t bound_failures = 0;
    for (const auto& p : curve.points) {
        if (p.iterations <= cont.settings.newton_iters) ++nominal;
        const auto id = verify::mu_identity(prob, p);
        worst_identity = std::max(worst_identity, id.defect);
        if (std::abs(p.mu) > id.max_abs_g + 1e-9) ++mu_bound_violations;
        for (const auto& b : verify::bound_checks(prob, p)) {
            if (!b.passed) ++bound_failures;
        }
    }
    report_["trace"] = {
        {"points", curve.points.size()},
        {"xi_min", curve.points.front().xi},
        {"xi_max", curve.points.back().xi},
        {"low_end", end_json(curve.low_end)},
        {"high_end", end_json(curve.high_end)},
        {"within_nominal_newton_budget", static_cast<double>(nominal) / curve.points.size()},
        {"max_mu_identity_defect", worst_identity},
        {"mu_bound_violations", mu_bound_violations},
        {"a_priori_bound_failures", bound_failures},
        {"kernel_isa", simd::isa_name(simd::best_isa())},
    };
    if (loud()) {
        out_ << "trace: " << curve.points.size() << " points, xi in [" << curve.points.front().xi
             << ", " << curve.points.back().xi << "], low end " 
             << continuation::stop_reason_name(curve.low_end.reason) << ", high end "
             << continuation::stop_reason_name(curve.high_end.reason) << '\n'
             << "wrote " << path(cfg_.output.csv).string() << " and "
             << path(cfg_.output.svg).string() << '\n';
    }
    return kSuccess;
}

int Session::verify()
{
    const auto rows = read_curve();
    const std::size_t steps = kVerifyGridFactor * cfg_.continuation.settings.grid_n;
    json failures = json::array();
    double worst_value = 0.0, worst_slope = 0.0, worst_mean = 0.0;
    for (const auto& r : rows) {
        const auto v = verify::verify_ivp(cfg_.problem, r.xi, r.mu, r.u0, r.du0, kVerifyTolerance,
                                          steps);
        worst_value = std::max(worst_value, v.periodicity_value);
        worst_slope = std::max(worst_slope, v.periodicity_slope);
        worst_mean = std::max(worst_mean, v.mean_defect);
        if (!v.passed) {
            failures.push_back({{"xi", r.xi}, {"mu", r.mu}, {"periodicity_value", v.periodicity_value},
                                {"periodicity_slope", v.periodicity_slope},
                                {"mean_defect", v.mean_defect}, {"failure", v.failure}});
        }
        if (cfg_.output.verbosity >= 2) {
            out_ << "verify xi=" << r.xi << " mu=" << r.mu << (v.passed ? " ok" : " FAIL") << '\n';
        }
    }
    report_["verify"] = {{"tolerance", kVerifyTolerance}, {"grid_N", steps},
                         {"checked", rows.size()}, {"failed", failures.size()},
                         {"max_periodicity_value", worst_value},
                         {"max_periodicity_slope", worst_slope}, {"max_mean_defect", worst_mean},
                         {"failures", failures}};
    if (loud()) {
        out_ << "verify: " << rows.size() - failures.size() << "/" << rows.size()
             << " points re-verified at tol " << kVerifyTolerance << '\n';
    }
    return failures.empty() ? kSuccess : kCheckFailure;
}

int Session::analyze()
{
    const auto rows = read_curve();
    std::vector<verify::CurvePoint> pts;
    for (const auto& r : rows) pts.push_back({r.xi, r.mu});
    if (pts.size() < 5) {
        throw NumericalError("analyze: curve has only " + std::to_string(pts.size()) +
                             " points, need at least 5");
    }
    const auto shape = verify::shape_report(pts);

    // qualitative shape the theory predicts for each family
    std::string expected;
    bool matches = false;
    const auto& family = cfg_.problem.family();
    if (std::holds_alternative<models::LazerSolimini>(family)) {
        expected = "monotone-decreasing";
        matches = shape.classification == verify::ShapeClass::monotone_decreasing;
    } else if (std::holds_alternative<models::Mems>(family)) {
        expected = "single-interior-minimum with mu_min > 0";
        matches = shape.classification == verify::ShapeClass::single_interior_minimum &&
                  shape.mu_min && *shape.mu_min > 0.0;
    } else {
        expected = "single-interior-minimum with mu_min < 0";
        matches = shape.classification == verify::ShapeClass::single_interior_minimum &&
                  shape.mu_min && *shape.mu_min < 0.0;
    }

    auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
    report_["analyze"] = {{"classification", verify::shape_class_name(shape.classification)},
                          {"points", shape.points},
                          {"xi_min", opt(shape.xi_min)},
                          {"mu_min", opt(shape.mu_min)},
                          {"second_diff_at_min", opt(shape.second_diff_at_min)},
                          {"monotone_violations", shape.monotone_violations},
                          {"direction_changes", shape.direction_changes},
                          {"left_trend", verify::trend_name(shape.left_trend)},
                          {"right_trend", verify::trend_name(shape.right_trend)},
                          {"mu_left", shape.mu_left},
                          {"mu_right", shape.mu_right},
                          {"zero_crossings", shape.zero_crossings},
                          {"expected", expected},
                          {"matches_expected", matches}};
    if (loud()) {
        out_ << "analyze: " << verify::shape_class_name(shape.classification);
        if (shape.mu_min) out_ << ", min mu = " << *shape.mu_min << " at xi = " << *shape.xi_min;
        out_ << (matches ? " (as expected)" : " (expected " + expected + ")") << '\n';
    }
    return matches ? kSuccess : kCheckFailure;
}

void add_common(CLI::App* cmd, Options& o, bool needs_config)
{
    auto* c = cmd->add_option("--config", o.config_path, "JSON run configuration");
    if (needs_config) c->required();
    cmd->add_option("--out-dir", o.out_dir, "Directory for CSV, SVG and report output");
    cmd->add_option("--grid-n", o.grid_n, "Integrator steps per period")->check(CLI::PositiveNumber);
    cmd->add_option("--delta-xi", o.delta_xi, "Continuation step in xi")->check(CLI::PositiveNumber);
}

} // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Global solution curves of periodic problems with singular nonlinearities",
                 "perioscope"};
    app.require_subcommand(1);
    Options opts;
    auto* trace_cmd = app.add_subcommand("trace", "Compute the solution curve; write CSV and SVG");
    auto* verify_cmd = app.add_subcommand("verify", "Re-verify every curve point by IVP integration");
    auto* analyze_cmd = app.add_subcommand("analyze", "Classify the shape of the curve");
    auto* repro_cmd = app.add_subcommand("reproduce", "Run a built-in worked example end to end");
    add_common(trace_cmd, opts, true);
    add_common(verify_cmd, opts, true);
    add_common(analyze_cmd, opts, true);
    add_common(repro_cmd, opts, false);
    repro_cmd->add_option("example", opts.example, "fig1, fig2 or fig3")
        ->required()
        ->check(CLI::IsMember({"fig1", "fig2", "fig3"}));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kConfigFailure;
    }

    try {
        config::RunConfig cfg = [&] {
            if (repro_cmd->parsed()) {
                auto cfg = config::parse_config(*config::builtin_config_text(opts.example));
                fs::create_directories(opts.out_dir);
                std::ofstream(fs::path(opts.out_dir) / (opts.example + ".config.json")) << cfg.source;
                return cfg;
            }
            return config::load_config(opts.config_path);
        }();
        config::apply_overrides(cfg, opts.grid_n, opts.delta_xi);

        Session session(std::move(cfg), opts.out_dir, out, err);
        int code = kSuccess;
        if (trace_cmd->parsed()) {
            code = session.trace();
        } else if (verify_cmd->parsed()) {
            code = session.verify();
        } else if (analyze_cmd->parsed()) {
            code = session.analyze();
        } else {
            code = session.trace();
            session.save_report();
            code = std::max(code, session.verify());
            session.save_report();
            code = std::max(code, session.analyze());
        }
        session.save_report();
        return code;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigFailure;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kNumericalFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kNumericalFailure;
    }
}

} // namespace perioscope::cli
