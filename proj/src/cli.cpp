#include "wsde/cli.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "wsde/error.hpp"
#include "wsde/estimate.hpp"
#include "wsde/io.hpp"
#include "wsde/likelihood.hpp"
#include "wsde/simulate.hpp"
#include "wsde/study.hpp"

namespace wsde::cli {

namespace {

using io::Json;

struct ModelFlags {
    double gamma = 1.0;
    double sigma = 0.2;
    double x0 = 10.0;
    double eps = 1e-3;
    double dt = 1e-3;
    std::size_t n = 1000;

    void attach(CLI::App& app) {
        app.add_option("--gamma", gamma, "drift shape gamma > 0")->check(CLI::PositiveNumber)->capture_default_str();
        app.add_option("--sigma", sigma, "diffusion sigma > 0")->check(CLI::PositiveNumber)->capture_default_str();
        app.add_option("--x0", x0, "initial state > 0")->check(CLI::PositiveNumber)->capture_default_str();
        app.add_option("--eps", eps, "initial time > 0")->check(CLI::PositiveNumber)->capture_default_str();
        app.add_option("--dt", dt, "grid step > 0")->check(CLI::PositiveNumber)->capture_default_str();
        app.add_option("--n", n, "number of grid points (>= 3)")->check(CLI::Range(3, 100000000))->capture_default_str();
    }

    ModelParams params() const { return {gamma, sigma, x0, eps}; }

    Json to_json() const {
        return Json{{"gamma", gamma}, {"sigma", sigma}, {"x0", x0}, {"eps", eps}, {"dt", dt}, {"n", n}};
    }
};

struct FitFlags {
    std::vector<double> bracket{1e-3, 10.0};
    double tolerance = 1e-8;
    int max_iterations = 200;

    void attach(CLI::App& app) {
        app.add_option("--bracket", bracket, "gamma search bracket LO,HI")
            ->delimiter(',')
            ->expected(2)
            ->capture_default_str();
        app.add_option("--tol", tolerance, "absolute tolerance on gamma")->check(CLI::PositiveNumber)->capture_default_str();
        app.add_option("--max-iter", max_iterations, "iteration limit")->check(CLI::Range(1, 1000000))->capture_default_str();
    }

    FitOptions options() const {
        FitOptions o;
        o.gamma_low = bracket.at(0);
        o.gamma_high = bracket.at(1);
        o.tolerance = tolerance;
        o.max_iterations = max_iterations;
        return o;
    }

    Json to_json() const {
        return Json{{"bracket", bracket}, {"tol", tolerance}, {"max_iter", max_iterations}};
    }
};

class Report {
public:
    Report(std::string command, const std::vector<std::string>& args, bool timing)
        : timing_(timing), start_(std::chrono::steady_clock::now()) {
        doc_["tool"] = "wsde";
        doc_["version"] = std::string(kVersion);
        doc_["command"] = std::move(command);
        doc_["argv"] = args;
    }

    Json& operator[](const char* key) { return doc_[key]; }

    std::string dump() {
        if (timing_) {
            const auto elapsed = std::chrono::steady_clock::now() - start_;
            doc_["duration_ms"] = std::chrono::duration<double, std::milli>(elapsed).count();
        }
        return doc_.dump(2) + "\n";
    }

private:
    Json doc_;
    bool timing_;
    std::chrono::steady_clock::time_point start_;
};

void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
    } else {
        io::write_file(path, text);
    }
}

bool is_data_error(ErrorCode code) {
    switch (code) {
    case ErrorCode::Parse:
    case ErrorCode::LengthMismatch:
    case ErrorCode::NonIncreasingTimes:
    case ErrorCode::NonPositiveTime:
    case ErrorCode::NonPositiveValue:
    case ErrorCode::TooShort:
        return true;
    default:
        return false;
    }
}

// ---- simulate ---------------------------------------------------------------

struct SimulateCmd {
    ModelFlags model;
    std::uint64_t seed = 0;
    std::string scheme = "exact";
    std::string out_path;
    std::string report_path;
    bool timing = false;

    int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) const {
        const auto params = model.params();
        const auto grid = TimeGrid::uniform(model.eps, model.dt, model.n);
        const auto path = scheme == "exact" ? exact_path(params, grid, seed) : euler_path(params, grid, seed);
        io::write_file(out_path, io::series_csv(path.times, path.values));

        int code = kOk;
        if (path.truncated_at) {
            err << "warning: Euler step drove X <= 0 at grid index " << *path.truncated_at
                << "; wrote the positive prefix\n";
            code = kNotConverged;
        }
        if (!report_path.empty()) {
            Report report("simulate", args, timing);
            report["options"] = model.to_json();
            report["options"]["scheme"] = scheme;
            report["options"]["out"] = out_path;
            report["seed"] = seed;
            Json result{{"scheme", scheme}, {"points", path.values.size()}};
            result["truncated_at"] = path.truncated_at ? Json(*path.truncated_at) : Json(nullptr);
            result["x_final"] = path.values.back();
            result["linear_growth_constant"] = linear_growth_constant(params, path.times);
            report["result"] = result;
            emit(report_path, report.dump(), out);
        }
        return code;
    }
};

// ---- estimate ---------------------------------------------------------------

struct EstimateCmd {
    std::string in_path;
    std::string out_path;
    std::string mode = "exact";
    std::string ci = "fisher";
    std::vector<double> levels;
    std::uint64_t seed = 0;
    std::size_t reps = 200;
    FitFlags fit;
    bool timing = false;

    int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) const {
        const auto series = io::read_series_csv(in_path);

        FitOptions options = fit.options();
        options.ci_levels = levels.empty() ? std::vector<double>{0.9} : levels;
        options.bootstrap_reps = reps;
        options.seed = seed;
        options.validate();

        Report report("estimate", args, timing);
        report["options"] = fit.to_json();
        report["options"]["in"] = in_path;
        report["options"]["mode"] = mode;
        report["options"]["ci"] = ci;
        report["options"]["levels"] = options.ci_levels;
        report["options"]["bootstrap_reps"] = reps;
        report["seed"] = seed;
        report["data"] = Json{{"points", series.size()},
                              {"uniform_step", uniform_step(series) ? Json(*uniform_step(series)) : Json(nullptr)}};

        bool ok = true;
        EstimationResult result = mode == "exact" ? fit_mle(series, options) : fit_paper(series, options);
        ok = result.converged;

        const bool want_fisher = ci == "fisher" || ci == "both";
        const bool want_boot = ci == "bootstrap" || ci == "both";
        if (result.mode == FitMode::ExactMLE && result.converged && !result.degenerate_sigma) {
            try {
                const auto se = stderr_fisher(series, result);
                result.stderr_gamma = se.gamma;
                result.stderr_sigma = se.sigma;
                report["fisher"] = Json{{"stderr_sigma2", se.sigma2}, {"hessian", se.hessian}};
                if (want_fisher) {
                    for (auto& c : fisher_ci(result, options.ci_levels)) result.ci.push_back(std::move(c));
                }
            } catch (const Error& e) {
                report["fisher"] = Json{{"error", e.what()}};
                if (want_fisher) ok = false;
            }
        } else if (want_fisher) {
            report["fisher"] = Json{{"error", "standard errors need a converged, non-degenerate exact MLE"}};
            if (result.mode == FitMode::ExactMLE) ok = false;
        }
        if (want_boot) {
            try {
                const auto boot = bootstrap_ci(series, result, options);
                for (const auto& c : boot.intervals) result.ci.push_back(c);
                report["bootstrap"] = io::to_json(boot);
            } catch (const Error& e) {
                report["bootstrap"] = Json{{"error", e.what()}};
                ok = false;
            }
        }
        report["result"] = io::to_json(result);

        if (result.mode == FitMode::PaperLiteral) {
            Json cmp;
            try {
                const auto exact = fit_mle(series, options);
                cmp["exact"] = io::to_json(exact);
                cmp["gamma_difference"] = result.gamma_hat - exact.gamma_hat;
                cmp["sigma_difference"] = result.sigma_hat - exact.sigma_hat;
                cmp["neg_log_lik_difference"] = result.neg_log_lik - exact.neg_log_lik;
            } catch (const Error& e) {
                cmp["error"] = e.what();
            }
            report["divergence_vs_exact"] = cmp;
        }
        emit(out_path, report.dump(), out);
        if (!ok) err << "estimation did not converge: " << result.diagnostics << "\n";
        return ok ? kOk : kNotConverged;
    }
};

// ---- mc / scan --------------------------------------------------------------

struct McCmd {
    ModelFlags model;
    std::size_t reps = 100;
    std::uint64_t seed = 0;
    std::string mode = "exact";
    std::string out_path;
    std::string csv_path;
    FitFlags fit;
    bool timing = false;

    int run(const std::vector<std::string>& args, std::ostream& out, std::ostream&) const {
        FitOptions options = fit.options();
        options.validate();
        Report report("mc", args, timing);
        report["options"] = model.to_json();
        report["options"]["reps"] = reps;
        report["options"]["mode"] = mode;
        report["options"]["fit"] = fit.to_json();
        report["seed"] = seed;
        int code = kOk;
        try {
            const auto summary = mc_study(model.params(), model.n, model.dt, reps, seed,
                                          mode == "exact" ? FitMode::ExactMLE : FitMode::PaperLiteral, options);
            report["result"] = io::to_json(summary);
            if (!csv_path.empty()) io::write_file(csv_path, io::study_csv(summary));
        } catch (const Error& e) {
            if (e.code() != ErrorCode::TooManyFailures) throw;
            report["error"] = e.what();
            code = kNotConverged;
        }
        emit(out_path, report.dump(), out);
        return code;
    }
};

struct ScanCmd {
    ModelFlags model;
    std::vector<std::size_t> n_values{250, 500, 1000};
    std::vector<double> h_values{1e-3};
    std::size_t reps = 100;
    std::uint64_t seed = 0;
    std::string out_path;
    std::string csv_path;
    FitFlags fit;
    bool timing = false;

    int run(const std::vector<std::string>& args, std::ostream& out, std::ostream&) const {
        FitOptions options = fit.options();
        options.validate();
        Report report("scan", args, timing);
        report["options"] = model.to_json();
        report["options"]["n_values"] = n_values;
        report["options"]["h_values"] = h_values;
        report["options"]["reps"] = reps;
        report["options"]["fit"] = fit.to_json();
        report["seed"] = seed;
        int code = kOk;
        try {
            const auto cells = bias_scan(model.params(), n_values, h_values, reps, seed, options);
            Json rows = Json::array();
            for (const auto& c : cells) rows.push_back(io::to_json(c));
            report["result"] = Json{{"cells", rows}};
            if (!csv_path.empty()) io::write_file(csv_path, io::bias_scan_csv(cells));
        } catch (const Error& e) {
            if (e.code() != ErrorCode::TooManyFailures) throw;
            report["error"] = e.what();
            code = kNotConverged;
        }
        emit(out_path, report.dump(), out);
        return code;
    }
};

// ---- moments ----------------------------------------------------------------

struct MomentsCmd {
    double gamma = 1.0;
    double x0 = 10.0;
    double eps = 1e-3;
    double t_end = 1.0;
    std::size_t points = 100;
    std::string out_path;

    int run(std::ostream& out, std::ostream& err) const {
        if (!(t_end > eps)) {
            err << "--t-end must exceed --eps\n";
            return kUsage;
        }
        // sigma does not enter the mean; any positive value satisfies ModelParams
        const ModelParams params(gamma, 1.0, x0, eps);
        std::string csv = "t,mean,weibull_pdf,ratio\n";
        for (std::size_t i = 0; i < points; ++i) {
            const double t = i + 1 == points ? t_end
                                             : eps + (t_end - eps) * static_cast<double>(i) /
                                                         static_cast<double>(points - 1);
            const double m = mean_xt(params, t);
            const double w = weibull_pdf(t, gamma + 1.0);
            csv += io::format_double(t) + ',' + io::format_double(m) + ',' + io::format_double(w) + ',' +
                   io::format_double(m / w) + '\n';
        }
        emit(out_path, csv, out);
        return kOk;
    }
};

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Simulation and estimation for the Weibull-drift diffusion", "wsde"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    SimulateCmd sim;
    auto* sim_app = app.add_subcommand("simulate", "simulate one path to a t,x CSV");
    sim.model.attach(*sim_app);
    sim_app->add_option("--seed", sim.seed, "generator seed")->required();
    sim_app->add_option("--scheme", sim.scheme, "exact or euler")
        ->check(CLI::IsMember({"exact", "euler"}))
        ->capture_default_str();
    sim_app->add_option("--out", sim.out_path, "output CSV")->required();
    sim_app->add_option("--report", sim.report_path, "optional JSON metadata report");
    sim_app->add_flag("--timing", sim.timing, "record wall-clock duration in the report");

    EstimateCmd est;
    auto* est_app = app.add_subcommand("estimate", "fit gamma and sigma to a t,x CSV");
    est_app->add_option("--in", est.in_path, "input CSV")->required();
    est_app->add_option("--out", est.out_path, "JSON report (default stdout)");
    est_app->add_option("--mode", est.mode, "exact or paper")
        ->check(CLI::IsMember({"exact", "paper"}))
        ->capture_default_str();
    est_app->add_option("--ci", est.ci, "fisher, bootstrap, both or none")
        ->check(CLI::IsMember({"fisher", "bootstrap", "both", "none"}))
        ->capture_default_str();
    est_app->add_option("--level", est.levels, "confidence level in (0,1), repeatable (default 0.9)")
        ->check(CLI::Range(0.0, 1.0))
        ->take_all();
    est_app->add_option("--seed", est.seed, "bootstrap seed")->required();
    est_app->add_option("--reps", est.reps, "bootstrap replications")->check(CLI::Range(1, 1000000))->capture_default_str();
    est.fit.attach(*est_app);
    est_app->add_flag("--timing", est.timing, "record wall-clock duration in the report");

    McCmd mc;
    auto* mc_app = app.add_subcommand("mc", "Monte Carlo bias/SD/RMSE study");
    mc.model.attach(*mc_app);
    mc_app->add_option("--reps", mc.reps, "replications (>= 2)")->check(CLI::Range(2, 100000000))->capture_default_str();
    mc_app->add_option("--seed", mc.seed, "master seed")->required();
    mc_app->add_option("--mode", mc.mode, "exact or paper")
        ->check(CLI::IsMember({"exact", "paper"}))
        ->capture_default_str();
    mc_app->add_option("--out", mc.out_path, "JSON report (default stdout)");
    mc_app->add_option("--csv", mc.csv_path, "optional summary CSV");
    mc.fit.attach(*mc_app);
    mc_app->add_flag("--timing", mc.timing, "record wall-clock duration in the report");

    ScanCmd scan;
    auto* scan_app = app.add_subcommand("scan", "mean |sigma2_hat - sigma2| over a grid of (N, h)");
    scan.model.attach(*scan_app);
    scan_app->add_option("--n-values", scan.n_values, "comma-separated N values")
        ->delimiter(',')
        ->check(CLI::Range(3, 100000000))
        ->capture_default_str();
    scan_app->add_option("--h-values", scan.h_values, "comma-separated step values")
        ->delimiter(',')
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    scan_app->add_option("--reps", scan.reps, "replications per cell (>= 2)")
        ->check(CLI::Range(2, 100000000))
        ->capture_default_str();
    scan_app->add_option("--seed", scan.seed, "master seed")->required();
    scan_app->add_option("--out", scan.out_path, "JSON report (default stdout)");
    scan_app->add_option("--csv", scan.csv_path, "optional table CSV");
    scan.fit.attach(*scan_app);
    scan_app->add_flag("--timing", scan.timing, "record wall-clock duration in the report");

    MomentsCmd mom;
    auto* mom_app = app.add_subcommand("moments", "analytic mean, Weibull density and their ratio");
    mom_app->add_option("--gamma", mom.gamma, "drift shape gamma > 0")->check(CLI::PositiveNumber)->capture_default_str();
    mom_app->add_option("--x0", mom.x0, "initial state > 0")->check(CLI::PositiveNumber)->capture_default_str();
    mom_app->add_option("--eps", mom.eps, "initial time > 0")->check(CLI::PositiveNumber)->capture_default_str();
    mom_app->add_option("--t-end", mom.t_end, "last time")->check(CLI::PositiveNumber)->capture_default_str();
    mom_app->add_option("--points", mom.points, "number of rows (>= 2)")->check(CLI::Range(2, 100000000))->capture_default_str();
    mom_app->add_option("--out", mom.out_path, "output CSV (default stdout)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << "\n";
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        const auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        err << sub->help();
        return kUsage;
    }

    try {
        if (sim_app->parsed()) return sim.run(args, out, err);
        if (est_app->parsed()) return est.run(args, out, err);
        if (mc_app->parsed()) return mc.run(args, out, err);
        if (scan_app->parsed()) return scan.run(args, out, err);
        if (mom_app->parsed()) return mom.run(out, err);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::Io) {
            err << "error: " << e.what() << "\n";
            return kIoFailure;
        }
        if (is_data_error(e.code()) && est_app->parsed()) {
            err << "error: " << e.what();
            if (e.index()) err << " (data row " << *e.index() + 1 << ", line " << *e.index() + 2 << ")";
            err << "\n";
            return kInvalidData;
        }
        if (e.code() == ErrorCode::InvalidParameter || e.code() == ErrorCode::EmptyStudy ||
            e.code() == ErrorCode::TooShort) {
            err << "error: " << e.what() << "\n";
            return kUsage;
        }
        err << "error: " << e.what() << "\n";
        return kNotConverged;
    }
    return kUsage;
}

} // namespace wsde::cli
