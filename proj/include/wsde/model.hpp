#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wsde {

/// Parameters of the Weibull-drift diffusion
///
///   dX_t = (gamma/t * (1 - t^(gamma+1)) - t^gamma) X_t dt + sigma X_t dB_t,   X_eps = x0.
///
/// All four values are strictly positive; the drift is singular at t = 0 so
/// the process starts at eps > 0.
class ModelParams {
public:
    ModelParams(double gamma, double sigma, double x0, double eps);

    double gamma() const noexcept { return gamma_; }
    double sigma() const noexcept { return sigma_; }
    double sigma2() const noexcept { return sigma_ * sigma_; }
    double x0() const noexcept { return x0_; }
    double eps() const noexcept { return eps_; }

    ModelParams with_eps(double eps) const { return {gamma_, sigma_, x0_, eps}; }

    friend bool operator==(const ModelParams&, const ModelParams&) = default;

private:
    double gamma_;
    double sigma_;
    double x0_;
    double eps_;
};

/// Discretely observed path: strictly increasing positive times with
/// positive states, at least three points.
class ObservationSeries {
public:
    std::span<const double> times() const noexcept { return times_; }
    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return times_.size(); }
    std::size_t increments() const noexcept { return times_.size() - 1; }

    friend bool operator==(const ObservationSeries&, const ObservationSeries&) = default;

private:
    friend ObservationSeries validate_series(std::vector<double> times, std::vector<double> values);
    ObservationSeries(std::vector<double> times, std::vector<double> values)
        : times_(std::move(times)), values_(std::move(values)) {}

    std::vector<double> times_;
    std::vector<double> values_;
};

/// Throws Error with LengthMismatch, TooShort, NonPositiveTime,
/// NonIncreasingTimes or NonPositiveValue; the error index is the offending
/// zero-based position.
ObservationSeries validate_series(std::vector<double> times, std::vector<double> values);

/// Time-dependent drift rate c(t) such that mu(t, x) = c(t) * x.
double drift_rate(double t, double gamma) noexcept;

double drift(double t, double x, double gamma) noexcept;
double diffusion(double x, double sigma) noexcept;

/// Smallest L with |mu(t,x)| + |g(x)| <= L (1 + |x|) for every x, taken as
/// the supremum over the supplied times. Both coefficients are linear in x,
/// so this is max_t |c(t)| + sigma.
double linear_growth_constant(const ModelParams& params, std::span<const double> times);

/// True when every observed (t_k, x_k) satisfies the linear-growth bound
/// with the constant computed on the same times.
bool satisfies_linear_growth(const ModelParams& params, const ObservationSeries& series);

enum class FitMode { ExactMLE, PaperLiteral };
enum class CiMethod { Fisher, Bootstrap };

std::string_view to_string(FitMode mode) noexcept;
std::string_view to_string(CiMethod method) noexcept;

struct ConfidenceInterval {
    std::string parameter; // "gamma" or "sigma"
    double level = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    CiMethod method = CiMethod::Fisher;
};

/// Outcome of one fit. `sigma_hat == sqrt(sigma2_hat)` always holds.
struct EstimationResult {
    double gamma_hat = 0.0;
    double sigma_hat = 0.0;
    double sigma2_hat = 0.0;
    double neg_log_lik = 0.0;
    std::optional<double> stderr_gamma;
    std::optional<double> stderr_sigma;
    std::vector<ConfidenceInterval> ci;
    FitMode mode = FitMode::ExactMLE;
    int iterations = 0;
    bool converged = false;
    bool boundary_hit = false;      // minimum on the (expanded) bracket edge
    bool degenerate_sigma = false;  // residuals at rounding level, sigma2_hat ~ 0
    bool degenerate_score = false;  // every summand of the literal score vanished
    std::string diagnostics;
};

struct ParameterSummary {
    double truth = 0.0;
    double mean = 0.0;
    double bias = 0.0;
    double sd = 0.0;    // population form (divisor R) so rmse^2 = bias^2 + sd^2
    double rmse = 0.0;
    double mc_se = 0.0; // standard error of `mean`, sample sd / sqrt(R)
};

struct StudyConfig {
    ModelParams params;
    std::size_t n = 0;
    double h = 0.0;
    std::size_t replications = 0;
    std::uint64_t seed = 0;
    FitMode mode = FitMode::ExactMLE;
};

struct StudySummary {
    StudyConfig config;
    std::size_t succeeded = 0;
    std::size_t failures = 0;
    ParameterSummary gamma;
    ParameterSummary sigma;
    ParameterSummary sigma2;
    double mean_abs_sigma2_error = 0.0;
    double se_abs_sigma2_error = 0.0;
};

// Lipschitz continuity in x and uniform moment bounds hold for these
// coefficients on any grid bounded away from t = 0 but are not observable
// from a finite sample; only linear growth is checked at runtime.

} // namespace wsde
