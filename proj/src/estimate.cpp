#include "wsde/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include <boost/math/distributions/normal.hpp>

#include "wsde/error.hpp"
#include "wsde/likelihood.hpp"
#include "wsde/optimize.hpp"
#include "wsde/rng.hpp"
#include "wsde/simulate.hpp"

namespace wsde {

namespace {

constexpr int kScanPoints = 32;
// Per-step log sd below this is rounding noise: the series is noise free.
constexpr double kDegenerateLogSd = 1e-7;

std::vector<double> log_spaced(double lo, double hi, int count) {
    std::vector<double> out(static_cast<std::size_t>(count));
    const double ratio = std::log(hi / lo);
    for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = lo * std::exp(ratio * i / (count - 1));
    out.front() = lo;
    out.back() = hi;
    return out;
}

struct Scan {
    std::vector<double> probes;
    std::size_t best = 0;
};

Scan scan_bracket(const ProfileObjective& objective, double lo, double hi) {
    Scan scan{log_spaced(lo, hi, kScanPoints), 0};
    double best_value = std::numeric_limits<double>::infinity();
    bool any = false;
    for (std::size_t i = 0; i < scan.probes.size(); ++i) {
        const double v = objective(scan.probes[i]);
        if (std::isnan(v) || v == std::numeric_limits<double>::infinity()) continue;
        if (!any || v < best_value) {
            best_value = v;
            scan.best = i;
            any = true;
        }
    }
    if (!any) throw Error(ErrorCode::BracketFailure, "profile likelihood is not finite anywhere on the bracket");
    return scan;
}

bool on_edge(const Scan& scan) { return scan.best == 0 || scan.best + 1 == scan.probes.size(); }

// One Newton step on central differences. Makes the estimate a smooth
// function of the data instead of depending on which Brent comparison won.
double polish(const ProfileObjective& objective, double gamma) {
    const double delta = 1e-5 * gamma;
    const double f0 = objective(gamma);
    const double fp = objective(gamma + delta);
    const double fm = objective(gamma - delta);
    if (!std::isfinite(f0) || !std::isfinite(fp) || !std::isfinite(fm)) return gamma;
    const double g1 = (fp - fm) / (2.0 * delta);
    const double g2 = (fp - 2.0 * f0 + fm) / (delta * delta);
    if (!(g2 > 0.0)) return gamma;
    const double step = g1 / g2;
    return std::abs(step) <= delta ? gamma - step : gamma;
}

double profile_sigma2(const ObservationSeries& series, double gamma) {
    return uniform_step(series) ? sigma2_profile(series, gamma) : sigma2_profile_general(series, gamma);
}

void finish(const ObservationSeries& series, EstimationResult& r) {
    r.sigma_hat = std::sqrt(r.sigma2_hat);
    r.neg_log_lik = r.sigma2_hat > 0.0 ? neg_log_likelihood(series, r.gamma_hat, r.sigma2_hat)
                                       : -std::numeric_limits<double>::infinity();
}

std::vector<double> scan_score(const ObservationSeries& series, const std::vector<double>& probes, double sigma2) {
    std::vector<double> out(probes.size());
    for (std::size_t i = 0; i < probes.size(); ++i) out[i] = paper_gamma_score(series, probes[i], sigma2);
    return out;
}

} // namespace

void FitOptions::validate() const {
    if (!(gamma_low > 0.0) || !(gamma_high > gamma_low))
        throw Error(ErrorCode::InvalidParameter, "gamma bracket must satisfy 0 < low < high");
    if (!(tolerance > 0.0)) throw Error(ErrorCode::InvalidParameter, "tolerance must be > 0");
    if (max_iterations < 1) throw Error(ErrorCode::InvalidParameter, "max_iterations must be >= 1");
    for (double level : ci_levels) {
        if (!(level > 0.0 && level < 1.0)) throw Error(ErrorCode::InvalidParameter, "CI levels must lie in (0, 1)");
    }
}

EstimationResult fit_mle(const ObservationSeries& series, const FitOptions& options) {
    options.validate();
    const ProfileObjective objective(series);

    EstimationResult r;
    r.mode = FitMode::ExactMLE;

    Scan scan = scan_bracket(objective, options.gamma_low, options.gamma_high);
    if (on_edge(scan)) scan = scan_bracket(objective, options.gamma_low / 4.0, options.gamma_high * 4.0);
    if (on_edge(scan)) {
        r.gamma_hat = scan.probes[scan.best];
        r.sigma2_hat = profile_sigma2(series, r.gamma_hat);
        r.boundary_hit = true;
        r.converged = false;
        r.diagnostics = "BoundaryHit: profile minimum on the expanded bracket edge";
        finish(series, r);
        return r;
    }

    const Minimum m = brent_minimize([&](double g) { return objective(g); }, scan.probes[scan.best - 1],
                                     scan.probes[scan.best + 1], options.tolerance, options.max_iterations);
    r.iterations = m.iterations;
    r.converged = m.converged;
    r.gamma_hat = m.x;

    r.degenerate_sigma = objective.step_log_sd(r.gamma_hat) < kDegenerateLogSd;
    if (!r.degenerate_sigma) r.gamma_hat = polish(objective, r.gamma_hat);
    r.sigma2_hat = profile_sigma2(series, r.gamma_hat);
    if (r.degenerate_sigma) r.diagnostics = "DegenerateSigma: residuals at rounding level";
    if (!r.converged) r.diagnostics = "NotConverged: Brent stopped at max_iterations";
    finish(series, r);
    return r;
}

EstimationResult fit_paper(const ObservationSeries& series, const FitOptions& options) {
    options.validate();
    EstimationResult r;
    r.mode = FitMode::PaperLiteral;

    const auto probes = log_spaced(options.gamma_low, options.gamma_high, 2 * kScanPoints);
    double gamma = std::clamp(options.paper_start, options.gamma_low, options.gamma_high);
    double sigma2 = 0.0;
    for (int iter = 1; iter <= options.max_iterations; ++iter) {
        r.iterations = iter;
        sigma2 = paper_sigma2(series, gamma).sign_corrected;
        if (!(sigma2 > 0.0)) {
            r.degenerate_sigma = true;
            r.diagnostics = "DegenerateSigma: closed-form sigma^2 is zero";
            break;
        }

        const auto a = residuals(series, gamma);
        double largest = 0.0;
        for (double v : a) largest = std::max(largest, std::abs(sigma2 + 2.0 * v));
        if (largest <= 1e-12 * std::max(1.0, sigma2)) {
            r.degenerate_score = true;
            r.converged = true;
            r.diagnostics = "DegenerateScore: every score summand vanishes";
            break;
        }

        // sign change of the score closest to the current gamma
        const auto score = scan_score(series, probes, sigma2);
        std::optional<std::size_t> pick;
        double pick_distance = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i + 1 < probes.size(); ++i) {
            if ((score[i] > 0.0) == (score[i + 1] > 0.0) && score[i] != 0.0) continue;
            const double distance = std::min(std::abs(probes[i] - gamma), std::abs(probes[i + 1] - gamma));
            if (distance < pick_distance) {
                pick_distance = distance;
                pick = i;
            }
        }
        if (!pick) throw Error(ErrorCode::NoSignChange, "literal gamma score has no sign change on the bracket");
        const Root root = bisect([&](double g) { return paper_gamma_score(series, g, sigma2); }, probes[*pick],
                                 probes[*pick + 1], options.tolerance * 0.1, 200);

        const double next = gamma + 0.5 * (root.x - gamma);
        const bool settled = std::abs(next - gamma) < options.tolerance;
        gamma = next;
        if (settled) {
            r.converged = true;
            break;
        }
    }
    r.gamma_hat = gamma;
    const PaperSigma2 closed = paper_sigma2(series, gamma);
    r.sigma2_hat = std::max(closed.sign_corrected, 0.0);
    if (!r.converged && r.diagnostics.empty())
        r.diagnostics = "NoConvergence: fixed-point iteration hit max_iterations";
    if (r.diagnostics.empty())
        r.diagnostics = "literal sigma2 = " + std::to_string(closed.literal) +
                        (closed.negative_estimate ? " (negative)" : "");
    finish(series, r);
    return r;
}

FisherErrors stderr_fisher(const ObservationSeries& series, const EstimationResult& result) {
    if (!result.converged) throw Error(ErrorCode::NotConverged, "standard errors need a converged fit");
    if (!(result.sigma2_hat > 0.0) || result.degenerate_sigma)
        throw Error(ErrorCode::SingularInformation, "sigma2_hat is zero; information is singular");

    const double g = result.gamma_hat;
    const double s = result.sigma2_hat;
    const double hg = 1e-5 * g;
    const double hs = 1e-5 * s;
    auto f = [&](double dg, double ds) { return neg_log_likelihood(series, g + dg, s + ds); };

    const double f0 = f(0.0, 0.0);
    const double h_gg = (f(hg, 0.0) - 2.0 * f0 + f(-hg, 0.0)) / (hg * hg);
    const double h_ss = (f(0.0, hs) - 2.0 * f0 + f(0.0, -hs)) / (hs * hs);
    const double h_gs = (f(hg, hs) - f(hg, -hs) - f(-hg, hs) + f(-hg, -hs)) / (4.0 * hg * hs);

    const double det = h_gg * h_ss - h_gs * h_gs;
    if (!(h_gg > 0.0) || !(h_ss > 0.0) || !(det > 0.0) || !std::isfinite(det))
        throw Error(ErrorCode::SingularInformation, "observed information is not positive definite");

    FisherErrors out;
    out.hessian = {h_gg, h_gs, h_gs, h_ss};
    out.gamma = std::sqrt(h_ss / det);
    out.sigma2 = std::sqrt(h_gg / det);
    out.sigma = out.sigma2 / (2.0 * std::sqrt(s));
    return out;
}

std::vector<ConfidenceInterval> fisher_ci(const EstimationResult& result, const std::vector<double>& levels) {
    if (!result.stderr_gamma || !result.stderr_sigma)
        throw Error(ErrorCode::InvalidParameter, "Wald intervals need standard errors");
    const boost::math::normal standard;
    std::vector<ConfidenceInterval> out;
    for (double level : levels) {
        const double z = boost::math::quantile(standard, 0.5 + 0.5 * level);
        out.push_back({"gamma", level, result.gamma_hat - z * *result.stderr_gamma,
                       result.gamma_hat + z * *result.stderr_gamma, CiMethod::Fisher});
        out.push_back({"sigma", level, result.sigma_hat - z * *result.stderr_sigma,
                       result.sigma_hat + z * *result.stderr_sigma, CiMethod::Fisher});
    }
    return out;
}

double sample_quantile(const std::vector<double>& sorted, double p) {
    if (sorted.empty()) throw Error(ErrorCode::EmptyStudy, "quantile of an empty sample");
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

BootstrapResult bootstrap_ci(const ObservationSeries& series, const EstimationResult& result,
                             const FitOptions& options) {
    options.validate();
    if (!result.converged || !(result.sigma2_hat > 0.0))
        throw Error(ErrorCode::NotConverged, "bootstrap needs a converged fit with sigma2_hat > 0");

    const ModelParams fitted(result.gamma_hat, result.sigma_hat, series.values()[0], series.times()[0]);
    const TimeGrid grid = TimeGrid::from_times({series.times().begin(), series.times().end()});
    const auto seeds = replicate_seeds(options.seed, options.bootstrap_reps);

    FitOptions inner = options;
    inner.ci_levels.clear();

    struct Draw {
        bool ok = false;
        double gamma = 0.0;
        double sigma = 0.0;
    };
    const auto draws = map_indexed<Draw>(seeds.size(), options.execution, [&](std::size_t i) {
        try {
            const auto path = exact_path(fitted, grid, seeds[i]);
            const auto replicate = path.series();
            const auto fit = result.mode == FitMode::ExactMLE ? fit_mle(replicate, inner) : fit_paper(replicate, inner);
            if (!fit.converged || fit.degenerate_sigma) return Draw{};
            return Draw{true, fit.gamma_hat, fit.sigma_hat};
        } catch (const Error&) {
            return Draw{};
        }
    });

    BootstrapResult out;
    out.replications = draws.size();
    std::vector<double> gammas, sigmas;
    for (const auto& d : draws) {
        if (!d.ok) {
            ++out.failures;
            continue;
        }
        gammas.push_back(d.gamma);
        sigmas.push_back(d.sigma);
    }
    if (gammas.empty() || static_cast<double>(out.failures) > 0.2 * static_cast<double>(out.replications)) {
        throw Error(ErrorCode::TooManyFailures, std::to_string(out.failures) + " of " +
                                                    std::to_string(out.replications) + " bootstrap refits failed");
    }
    std::sort(gammas.begin(), gammas.end());
    std::sort(sigmas.begin(), sigmas.end());

    for (double level : options.ci_levels) {
        const double tail = 0.5 * (1.0 - level);
        out.intervals.push_back({"gamma", level, sample_quantile(gammas, tail), sample_quantile(gammas, 1.0 - tail),
                                 CiMethod::Bootstrap});
        out.intervals.push_back({"sigma", level, sample_quantile(sigmas, tail), sample_quantile(sigmas, 1.0 - tail),
                                 CiMethod::Bootstrap});
    }
    for (const auto& [name, sorted] : {std::pair{"gamma", &gammas}, std::pair{"sigma", &sigmas}}) {
        QuantileSet set{name, {}};
        for (double p : {0.05, 0.15, 0.75, 0.95}) set.values.emplace_back(p, sample_quantile(*sorted, p));
        out.reference_quantiles.push_back(std::move(set));
    }
    return out;
}

} // namespace wsde
