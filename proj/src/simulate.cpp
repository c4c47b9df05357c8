#include "wsde/simulate.hpp"

#include <cmath>
#include <string>

#include "paths_internal.hpp"
#include "wsde/error.hpp"

namespace wsde {

TimeGrid TimeGrid::uniform(double eps, double h, std::size_t count) {
    if (!(eps > 0.0) || !std::isfinite(eps)) throw Error(ErrorCode::NonPositiveTime, "grid eps must be > 0");
    if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorCode::InvalidParameter, "grid step must be > 0");
    if (count < 3) throw Error(ErrorCode::TooShort, "grid needs at least 3 points");
    std::vector<double> times(count);
    for (std::size_t k = 0; k < count; ++k) times[k] = eps + static_cast<double>(k) * h;
    return TimeGrid(std::move(times), h);
}

TimeGrid TimeGrid::from_times(std::vector<double> times) {
    if (times.size() < 3) throw Error(ErrorCode::TooShort, "grid needs at least 3 points");
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (!(times[k] > 0.0) || !std::isfinite(times[k]))
            throw Error(ErrorCode::NonPositiveTime, "grid time " + std::to_string(k) + " is not > 0", k);
        if (k > 0 && !(times[k] > times[k - 1]))
            throw Error(ErrorCode::NonIncreasingTimes, "grid time " + std::to_string(k) + " not increasing", k);
    }
    return TimeGrid(std::move(times), std::nullopt);
}

std::string_view to_string(Scheme scheme) noexcept {
    return scheme == Scheme::Exact ? "exact" : "euler";
}

double weibull_pdf(double t, double shape) {
    if (!(shape > 0.0)) throw Error(ErrorCode::InvalidShape, "Weibull shape must be > 0");
    if (!(t >= 0.0)) throw Error(ErrorCode::InvalidParameter, "Weibull density needs t >= 0");
    if (t == 0.0) {
        if (shape == 1.0) return 1.0;
        return shape > 1.0 ? 0.0 : HUGE_VAL;
    }
    const double tk = std::pow(t, shape);
    return shape * tk / t * std::exp(-tk);
}

double mean_xt(const ModelParams& params, double t) {
    if (!(t >= params.eps())) throw Error(ErrorCode::TimeBeforeStart, "t precedes eps");
    const double g = params.gamma();
    const double eps = params.eps();
    return params.x0() * std::pow(t / eps, g) * std::exp(std::pow(eps, g + 1.0) - std::pow(t, g + 1.0));
}

namespace {

void require_grid(double eps, const TimeGrid& grid) {
    if (grid.eps() != eps) throw Error(ErrorCode::GridMismatch, "grid must start at the model eps");
}

PathSample exact_impl(const detail::Coefficients& c, const TimeGrid& grid, std::uint64_t seed) {
    PathSample path;
    path.scheme = Scheme::Exact;
    path.seed = seed;
    path.times.assign(grid.times().begin(), grid.times().end());
    path.values.resize(grid.size());
    path.values[0] = c.x0;
    const detail::ExactSteps steps(c, grid.times());
    detail::walk_exact(c, steps, seed, [&](std::size_t k, double x) { path.values[k] = x; });
    for (std::size_t k = 1; k < path.values.size(); ++k) {
        if (!(path.values[k] > 0.0) || !std::isfinite(path.values[k]))
            throw Error(ErrorCode::NonPositiveState, "exact path left double range", k);
    }
    return path;
}

PathSample euler_impl(const detail::Coefficients& c, const TimeGrid& grid, std::uint64_t seed) {
    PathSample path;
    path.scheme = Scheme::Euler;
    path.seed = seed;
    path.times.assign(grid.times().begin(), grid.times().end());
    path.values.resize(grid.size());
    path.values[0] = c.x0;
    const std::size_t failed_at =
        detail::walk_euler(c, grid.times(), seed, [&](std::size_t k, double x) { path.values[k] = x; });
    if (failed_at != 0) {
        path.truncated_at = failed_at;
        path.times.resize(failed_at);
        path.values.resize(failed_at);
    }
    return path;
}

} // namespace

PathSample exact_path(const ModelParams& params, const TimeGrid& grid, std::uint64_t seed) {
    require_grid(params.eps(), grid);
    return exact_impl({params.gamma(), params.sigma(), params.x0()}, grid, seed);
}

PathSample euler_path(const ModelParams& params, const TimeGrid& grid, std::uint64_t seed) {
    require_grid(params.eps(), grid);
    return euler_impl({params.gamma(), params.sigma(), params.x0()}, grid, seed);
}

namespace testing {

PathSample noise_free_exact_path(double gamma, double x0, const TimeGrid& grid) {
    return exact_impl({gamma, 0.0, x0}, grid, 0);
}

PathSample noise_free_euler_path(double gamma, double x0, const TimeGrid& grid) {
    return euler_impl({gamma, 0.0, x0}, grid, 0);
}

} // namespace testing

} // namespace wsde
