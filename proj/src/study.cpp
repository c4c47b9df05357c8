#include "wsde/study.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wsde/error.hpp"
#include "wsde/kernels.hpp"

namespace wsde {

namespace {

struct Replicate {
    bool ok = false;
    double gamma = 0.0;
    double sigma = 0.0;
    double sigma2 = 0.0;
};

double sorted_sum(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

ParameterSummary summarize(const std::vector<double>& draws, double truth) {
    const auto r = static_cast<double>(draws.size());
    ParameterSummary p;
    p.truth = truth;
    p.mean = sorted_sum(draws) / r;
    p.bias = p.mean - truth;
    std::vector<double> sq(draws.size());
    std::transform(draws.begin(), draws.end(), sq.begin(), [&](double x) { return (x - p.mean) * (x - p.mean); });
    const double ss = sorted_sum(sq);
    p.sd = std::sqrt(ss / r);
    p.rmse = std::sqrt(p.bias * p.bias + p.sd * p.sd);
    p.mc_se = draws.size() > 1 ? std::sqrt(ss / (r - 1.0) / r) : 0.0;
    return p;
}

} // namespace

StudySummary mc_study_with_seeds(const ModelParams& params, std::size_t grid_size, double h,
                                 const std::vector<std::uint64_t>& seeds, FitMode mode, const FitOptions& fit) {
    if (seeds.size() < 2) throw Error(ErrorCode::EmptyStudy, "a study needs at least 2 replications");
    const TimeGrid grid = TimeGrid::uniform(params.eps(), h, grid_size);
    FitOptions inner = fit;
    inner.ci_levels.clear();

    const auto reps = map_indexed<Replicate>(seeds.size(), fit.execution, [&](std::size_t i) {
        try {
            const auto series = exact_path(params, grid, seeds[i]).series();
            const auto r = mode == FitMode::ExactMLE ? fit_mle(series, inner) : fit_paper(series, inner);
            if (!r.converged || r.degenerate_sigma) return Replicate{};
            return Replicate{true, r.gamma_hat, r.sigma_hat, r.sigma2_hat};
        } catch (const Error&) {
            return Replicate{};
        }
    });

    StudySummary out{StudyConfig{params, grid_size, h, seeds.size(), 0, mode}, 0, 0, {}, {}, {}, 0.0, 0.0};
    std::vector<double> gammas, sigmas, sigma2s, abs_err;
    for (const auto& r : reps) {
        if (!r.ok) {
            ++out.failures;
            continue;
        }
        gammas.push_back(r.gamma);
        sigmas.push_back(r.sigma);
        sigma2s.push_back(r.sigma2);
        abs_err.push_back(std::abs(r.sigma2 - params.sigma2()));
    }
    out.succeeded = gammas.size();
    if (out.succeeded < 2 || static_cast<double>(out.failures) > 0.2 * static_cast<double>(seeds.size())) {
        throw Error(ErrorCode::TooManyFailures,
                    std::to_string(out.failures) + " of " + std::to_string(seeds.size()) + " replicate fits failed");
    }
    out.gamma = summarize(gammas, params.gamma());
    out.sigma = summarize(sigmas, params.sigma());
    out.sigma2 = summarize(sigma2s, params.sigma2());
    const auto err = summarize(abs_err, 0.0);
    out.mean_abs_sigma2_error = err.mean;
    out.se_abs_sigma2_error = err.mc_se;
    return out;
}

StudySummary mc_study(const ModelParams& params, std::size_t grid_size, double h, std::size_t replications,
                      std::uint64_t seed, FitMode mode, const FitOptions& fit) {
    if (replications < 2) throw Error(ErrorCode::EmptyStudy, "a study needs at least 2 replications");
    auto summary = mc_study_with_seeds(params, grid_size, h, replicate_seeds(seed, replications), mode, fit);
    summary.config.seed = seed;
    return summary;
}

std::vector<BiasCell> bias_scan(const ModelParams& params, const std::vector<std::size_t>& n_values,
                                const std::vector<double>& h_values, std::size_t replications, std::uint64_t seed,
                                const FitOptions& fit) {
    if (replications == 0 || n_values.empty() || h_values.empty())
        throw Error(ErrorCode::EmptyStudy, "bias scan needs replications and at least one (N, h) cell");
    for (std::size_t n : n_values) {
        if (n < 3) throw Error(ErrorCode::TooShort, "every N must be >= 3");
    }
    for (double h : h_values) {
        if (!(h > 0.0)) throw Error(ErrorCode::InvalidParameter, "every h must be > 0");
    }
    std::vector<BiasCell> cells;
    for (std::size_t n : n_values) {
        for (double h : h_values) {
            const auto s = mc_study(params, n, h, replications, seed, FitMode::ExactMLE, fit);
            BiasCell cell;
            cell.n = n;
            cell.h = h;
            cell.replications = replications;
            cell.failures = s.failures;
            cell.mean_abs_error = s.mean_abs_sigma2_error;
            cell.se_abs_error = s.se_abs_sigma2_error;
            cell.signed_bias = s.sigma2.bias;
            cell.se_signed_bias = s.sigma2.mc_se;
            cells.push_back(cell);
        }
    }
    return cells;
}

} // namespace wsde
