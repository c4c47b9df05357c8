#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wsde/kernels.hpp"
#include "wsde/model.hpp"

namespace wsde {

struct FitOptions {
    double gamma_low = 1e-3;
    double gamma_high = 10.0;
    double tolerance = 1e-8;          // absolute, on gamma
    int max_iterations = 200;
    std::vector<double> ci_levels{0.9};
    std::size_t bootstrap_reps = 200;
    std::uint64_t seed = 0;
    double paper_start = 1.0;         // initial gamma of the paper-literal iteration
    Execution execution = Execution::Parallel;

    /// Throws InvalidParameter on an empty or inverted bracket, non-positive
    /// tolerance or levels outside (0, 1).
    void validate() const;
};

/// Profile-likelihood MLE. sigma^2 is maximized out in closed form and the
/// remaining gamma -> NLL(gamma, sigma2(gamma)) is minimized by a 32-point
/// log-spaced scan of the bracket followed by Brent on the neighbours of the
/// best probe and one finite-difference Newton polish. A minimum on the
/// bracket edge triggers one expansion (low/4, high*4); a minimum still on
/// the edge is reported with boundary_hit and converged = false.
EstimationResult fit_mle(const ObservationSeries& series, const FitOptions& options);

/// Paper-literal estimator: alternates sigma^2 from the sign-corrected closed
/// form with a bisection root of the literal gamma score, damping gamma
/// updates by 0.5. Not converging within max_iterations is reported through
/// converged = false, not thrown.
EstimationResult fit_paper(const ObservationSeries& series, const FitOptions& options);

struct FisherErrors {
    double gamma = 0.0;
    double sigma = 0.0;
    double sigma2 = 0.0;
    /// Observed information in (gamma, sigma^2), row-major, symmetric.
    std::array<double, 4> hessian{};
};

/// Standard errors from the inverse of the central finite-difference Hessian
/// of the NLL at (gamma_hat, sigma2_hat), relative step 1e-5 per coordinate.
/// The sigma error is the delta-method image of the sigma^2 error.
FisherErrors stderr_fisher(const ObservationSeries& series, const EstimationResult& result);

/// Wald intervals estimate +- z_{(1+level)/2} * stderr for gamma and sigma.
std::vector<ConfidenceInterval> fisher_ci(const EstimationResult& result, const std::vector<double>& levels);

struct QuantileSet {
    std::string parameter;
    std::vector<std::pair<double, double>> values; // (probability, quantile)
};

struct BootstrapResult {
    std::vector<ConfidenceInterval> intervals;
    /// The 5%, 15%, 75% and 95% bootstrap quantiles per parameter.
    std::vector<QuantileSet> reference_quantiles;
    std::size_t replications = 0;
    std::size_t failures = 0;
};

/// Parametric bootstrap: bootstrap_reps exact paths at (gamma_hat, sigma_hat)
/// on the observed times starting from the first observation, each refitted
/// with the result's mode. Intervals are equal-tailed empirical quantiles.
/// Replicate i uses derive_seed(options.seed, i). Throws TooManyFailures
/// when more than 20% of refits fail or do not converge.
BootstrapResult bootstrap_ci(const ObservationSeries& series, const EstimationResult& result,
                             const FitOptions& options);

/// Linear-interpolation sample quantile (Hyndman-Fan type 7) of sorted data.
double sample_quantile(const std::vector<double>& sorted, double p);

} // namespace wsde
