#include "wsde/model.hpp"

#include <algorithm>
#include <cmath>

#include "wsde/error.hpp"

namespace wsde {

namespace {

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw Error(ErrorCode::InvalidParameter,
                    std::string(name) + " must be finite and > 0, got " + std::to_string(value));
    }
}

} // namespace

ModelParams::ModelParams(double gamma, double sigma, double x0, double eps)
    : gamma_(gamma), sigma_(sigma), x0_(x0), eps_(eps) {
    require_positive(gamma, "gamma");
    require_positive(sigma, "sigma");
    require_positive(x0, "x0");
    require_positive(eps, "eps");
}

ObservationSeries validate_series(std::vector<double> times, std::vector<double> values) {
    if (times.size() != values.size()) {
        throw Error(ErrorCode::LengthMismatch, std::to_string(times.size()) + " times vs " +
                                                   std::to_string(values.size()) + " values");
    }
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(times[i] > 0.0) || !std::isfinite(times[i])) {
            throw Error(ErrorCode::NonPositiveTime, "time at index " + std::to_string(i) + " is not > 0", i);
        }
        if (i > 0 && !(times[i] > times[i - 1])) {
            throw Error(ErrorCode::NonIncreasingTimes,
                        "time at index " + std::to_string(i) + " does not exceed its predecessor", i);
        }
        if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
            throw Error(ErrorCode::NonPositiveValue, "value at index " + std::to_string(i) + " is not > 0", i);
        }
    }
    if (times.size() < 3) {
        throw Error(ErrorCode::TooShort, "need at least 3 observations, got " + std::to_string(times.size()));
    }
    return ObservationSeries(std::move(times), std::move(values));
}

std::string_view to_string(FitMode mode) noexcept {
    return mode == FitMode::ExactMLE ? "ExactMLE" : "PaperLiteral";
}

std::string_view to_string(CiMethod method) noexcept {
    return method == CiMethod::Fisher ? "fisher" : "bootstrap";
}

double drift_rate(double t, double gamma) noexcept {
    return gamma / t * (1.0 - std::pow(t, gamma + 1.0)) - std::pow(t, gamma);
}

double drift(double t, double x, double gamma) noexcept { return drift_rate(t, gamma) * x; }

double diffusion(double x, double sigma) noexcept { return sigma * x; }

double linear_growth_constant(const ModelParams& params, std::span<const double> times) {
    double sup_rate = 0.0;
    for (double t : times) sup_rate = std::max(sup_rate, std::abs(drift_rate(t, params.gamma())));
    return sup_rate + params.sigma();
}

bool satisfies_linear_growth(const ModelParams& params, const ObservationSeries& series) {
    const double bound = linear_growth_constant(params, series.times());
    const auto t = series.times();
    const auto x = series.values();
    for (std::size_t k = 0; k < series.size(); ++k) {
        const double lhs = std::abs(drift(t[k], x[k], params.gamma())) + std::abs(diffusion(x[k], params.sigma()));
        // one ulp of slack for the product rounding
        if (lhs > bound * (1.0 + std::abs(x[k])) * (1.0 + 1e-15)) return false;
    }
    return true;
}

} // namespace wsde
