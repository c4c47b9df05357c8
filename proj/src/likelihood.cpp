#include "wsde/likelihood.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "wsde/error.hpp"

namespace wsde {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836; // ln(2 pi)

double gaussian_nll_term(double a, double v) {
    const double r = a + 0.5 * v;
    return 0.5 * (kLog2Pi + std::log(v)) + r * r / (2.0 * v);
}

} // namespace

std::vector<double> residuals(const ObservationSeries& series, double gamma) {
    const auto t = series.times();
    const auto x = series.values();
    std::vector<double> a(series.increments());
    for (std::size_t k = 1; k < series.size(); ++k) {
        a[k - 1] = std::log(x[k] / x[k - 1]) - gamma * std::log(t[k] / t[k - 1]) +
                   std::pow(t[k], gamma + 1.0) - std::pow(t[k - 1], gamma + 1.0);
    }
    return a;
}

double transition_logpdf(double x_prev, double t_prev, double x_next, double t_next, const ModelParams& params) {
    if (!(x_prev > 0.0) || !(x_next > 0.0)) throw Error(ErrorCode::NonPositiveState, "states must be > 0");
    if (!(t_prev > 0.0) || !(t_next > t_prev)) throw Error(ErrorCode::NonIncreasingTimes, "need 0 < t_prev < t_next");
    const double g = params.gamma();
    const double h = t_next - t_prev;
    const double v = params.sigma2() * h;
    const double mean = std::log(x_prev) + g * std::log(t_next / t_prev) -
                        (std::pow(t_next, g + 1.0) - std::pow(t_prev, g + 1.0)) - 0.5 * v;
    const double z = std::log(x_next) - mean;
    return -0.5 * (kLog2Pi + std::log(v)) - z * z / (2.0 * v);
}

double neg_log_likelihood(const ObservationSeries& series, const ModelParams& params) {
    const auto t = series.times();
    const auto x = series.values();
    double total = 0.0;
    for (std::size_t k = 1; k < series.size(); ++k) total -= transition_logpdf(x[k - 1], t[k - 1], x[k], t[k], params);
    return total;
}

double neg_log_likelihood(const ObservationSeries& series, double gamma, double sigma2) {
    if (!(sigma2 > 0.0)) throw Error(ErrorCode::InvalidParameter, "sigma2 must be > 0");
    const auto t = series.times();
    const auto a = residuals(series, gamma);
    double total = 0.0;
    for (std::size_t k = 1; k < series.size(); ++k) total += gaussian_nll_term(a[k - 1], sigma2 * (t[k] - t[k - 1]));
    return total;
}

std::optional<double> uniform_step(const ObservationSeries& series) {
    const auto t = series.times();
    const double h = (t.back() - t.front()) / static_cast<double>(series.increments());
    for (std::size_t k = 1; k < t.size(); ++k) {
        if (std::abs((t[k] - t[k - 1]) - h) > 1e-9 * h) return std::nullopt;
    }
    return h;
}

double sigma2_profile(const ObservationSeries& series, double gamma) {
    const auto h = uniform_step(series);
    if (!h) throw Error(ErrorCode::NonUniformGrid, "closed-form sigma^2 profile needs a uniform grid");
    const auto a = residuals(series, gamma);
    double s = 0.0;
    for (double v : a) s += v * v;
    const double u = s / static_cast<double>(a.size());
    // (2/h)(sqrt(1+u) - 1) without the cancellation for small u
    return 2.0 / *h * u / (std::sqrt(1.0 + u) + 1.0);
}

double sigma2_profile_general(const ObservationSeries& series, double gamma) {
    const auto t = series.times();
    const auto a = residuals(series, gamma);
    double q = 0.0;
    for (std::size_t k = 1; k < t.size(); ++k) q += a[k - 1] * a[k - 1] / (t[k] - t[k - 1]);
    const double n = static_cast<double>(a.size());
    const double total_h = t.back() - t.front();
    return 2.0 * q / (std::sqrt(n * n + total_h * q) + n);
}

ProfileObjective::ProfileObjective(const ObservationSeries& series) {
    const auto t = series.times();
    const auto x = series.values();
    const std::size_t n = series.increments();
    log_t_.resize(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) log_t_[k] = std::log(t[k]);
    dlog_x_.resize(n);
    dlog_t_.resize(n);
    h_.resize(n);
    for (std::size_t k = 1; k < t.size(); ++k) {
        dlog_x_[k - 1] = std::log(x[k] / x[k - 1]);
        dlog_t_[k - 1] = std::log(t[k] / t[k - 1]);
        h_[k - 1] = t[k] - t[k - 1];
        sum_log_h_ += std::log(h_[k - 1]);
    }
    total_h_ = t.back() - t.front();
    n_ = static_cast<double>(n);
}

ProfileObjective::Sums ProfileObjective::sums(double gamma) const {
    Sums out{0.0, 0.0};
    const double power = gamma + 1.0;
    double prev = std::exp(power * log_t_[0]);
    for (std::size_t k = 0; k < h_.size(); ++k) {
        const double next = std::exp(power * log_t_[k + 1]);
        const double a = dlog_x_[k] - gamma * dlog_t_[k] + next - prev;
        out.q += a * a / h_[k];
        out.a += a;
        prev = next;
    }
    return out;
}

double ProfileObjective::root(double q) const {
    return 2.0 * q / (std::sqrt(n_ * n_ + total_h_ * q) + n_);
}

double ProfileObjective::sigma2(double gamma) const { return root(sums(gamma).q); }

double ProfileObjective::operator()(double gamma) const {
    const Sums s = sums(gamma);
    const double v = root(s.q);
    if (!(v > 0.0)) return -std::numeric_limits<double>::infinity();
    return 0.5 * n_ * (kLog2Pi + std::log(v)) + 0.5 * sum_log_h_ + s.q / (2.0 * v) + 0.5 * s.a +
           v * total_h_ / 8.0;
}

double ProfileObjective::step_log_sd(double gamma) const {
    return std::sqrt(sigma2(gamma) * total_h_ / n_);
}

PaperSigma2 paper_sigma2(const ObservationSeries& series, double gamma) {
    const auto a = residuals(series, gamma);
    double s = 0.0;
    for (double v : a) s += v * v;
    const double radicand = 4.0 - 4.0 * s / static_cast<double>(a.size());
    if (radicand < 0.0) {
        throw Error(ErrorCode::DomainError,
                    "4 - 4S/(N-1) is negative (S = " + std::to_string(s) + ", N-1 = " + std::to_string(a.size()) + ")");
    }
    const double root = std::sqrt(radicand);
    PaperSigma2 out;
    out.literal = root - 2.0;
    out.sign_corrected = 2.0 - root;
    out.negative_estimate = out.literal < 0.0;
    return out;
}

double paper_gamma_score(const ObservationSeries& series, double gamma, double sigma2) {
    if (!(sigma2 > 0.0)) throw Error(ErrorCode::InvalidParameter, "sigma2 must be > 0");
    const auto t = series.times();
    const auto a = residuals(series, gamma);
    double sum = 0.0;
    for (std::size_t k = 1; k < t.size(); ++k) {
        const double sensitivity =
            std::log(t[k] / t[k - 1]) - (gamma + 1.0) * (std::pow(t[k], gamma) - std::pow(t[k - 1], gamma));
        sum += (sigma2 + 2.0 * a[k - 1]) * sensitivity;
    }
    return sum / (2.0 * sigma2);
}

} // namespace wsde
