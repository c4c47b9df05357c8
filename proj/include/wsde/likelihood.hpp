#pragma once

#include <optional>
#include <vector>

#include "wsde/model.hpp"

namespace wsde {

/// a_k = ln(X_k/X_{k-1}) - gamma ln(t_k/t_{k-1}) + t_k^(gamma+1) - t_{k-1}^(gamma+1),
/// one entry per increment. Under the model a_k ~ N(-sigma^2 h_k / 2, sigma^2 h_k).
std::vector<double> residuals(const ObservationSeries& series, double gamma);

/// Gaussian log-density of ln(x_next) given (x_prev, t_prev) under the exact
/// transition law. The lognormal Jacobian -ln(x_next) is not included.
double transition_logpdf(double x_prev, double t_prev, double x_next, double t_next, const ModelParams& params);

/// -sum_k transition_logpdf(X_{k-1}, t_{k-1}, X_k, t_k). The initial-state
/// density is treated as a point mass and dropped.
double neg_log_likelihood(const ObservationSeries& series, const ModelParams& params);

/// Same objective at an arbitrary (gamma, sigma2 > 0); used by optimizers and
/// finite differences where sigma2 leaves the ModelParams domain.
double neg_log_likelihood(const ObservationSeries& series, double gamma, double sigma2);

/// Common step when every spacing is within 1e-9 (relative) of the mean
/// spacing (t_N - t_1)/(N - 1).
std::optional<double> uniform_step(const ObservationSeries& series);

/// Maximizer of the likelihood over sigma^2 at fixed gamma on a uniform grid:
/// (2/h) (sqrt(1 + S/(N-1)) - 1) with S = sum a_k^2. Throws NonUniformGrid.
double sigma2_profile(const ObservationSeries& series, double gamma);

/// Maximizer over sigma^2 for arbitrary spacing. With n = N-1,
/// H = sum h_k and Q = sum a_k^2 / h_k the score equation is
/// H s^2 + 4 n s - 4 Q = 0, whose positive root reduces to sigma2_profile
/// when the grid is uniform.
double sigma2_profile_general(const ObservationSeries& series, double gamma);

/// Profiled objective gamma -> NLL(gamma, sigma2_profile_general(gamma)) with
/// the per-series logarithms cached. Returns -inf when every residual is zero.
class ProfileObjective {
public:
    explicit ProfileObjective(const ObservationSeries& series);

    double sigma2(double gamma) const;
    double operator()(double gamma) const;

    /// Per-step log standard deviation sqrt(sigma2 * mean h) at gamma.
    double step_log_sd(double gamma) const;

private:
    struct Sums {
        double q;   // sum a_k^2 / h_k
        double a;   // sum a_k
    };
    Sums sums(double gamma) const;
    double root(double q) const;

    std::vector<double> log_t_;
    std::vector<double> dlog_x_;
    std::vector<double> dlog_t_;
    std::vector<double> h_;
    double total_h_ = 0.0;
    double sum_log_h_ = 0.0;
    double n_ = 0.0;
};

/// Literal closed form sqrt(4 - 4S/(N-1)) - 2 alongside the sign-flipped
/// variant 2 - sqrt(4 - 4S/(N-1)). Throws DomainError for S > N-1.
struct PaperSigma2 {
    double literal = 0.0;
    double sign_corrected = 0.0;
    bool negative_estimate = false; // literal < 0, i.e. any S > 0
};
PaperSigma2 paper_sigma2(const ObservationSeries& series, double gamma);

/// Literal gamma score
/// (1/(2 sigma2)) sum (sigma2 + 2 a_k)(ln(t_k/t_{k-1}) - (gamma+1)(t_k^gamma - t_{k-1}^gamma)).
/// This is not the derivative of neg_log_likelihood: the t^(gamma+1) term and
/// the missing 1/h factor are kept verbatim.
double paper_gamma_score(const ObservationSeries& series, double gamma, double sigma2);

} // namespace wsde
