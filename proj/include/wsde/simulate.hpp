#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "wsde/model.hpp"

namespace wsde {

/// Observation times starting at eps. Uniform grids place t_k = eps + k*h.
class TimeGrid {
public:
    static TimeGrid uniform(double eps, double h, std::size_t count);
    static TimeGrid from_times(std::vector<double> times);

    std::span<const double> times() const noexcept { return times_; }
    std::size_t size() const noexcept { return times_.size(); }
    double eps() const noexcept { return times_.front(); }
    double end() const noexcept { return times_.back(); }
    /// Step of a grid built by `uniform`; empty for explicit grids.
    std::optional<double> step() const noexcept { return step_; }

private:
    explicit TimeGrid(std::vector<double> times, std::optional<double> step)
        : times_(std::move(times)), step_(step) {}

    std::vector<double> times_;
    std::optional<double> step_;
};

enum class Scheme { Exact, Euler };

std::string_view to_string(Scheme scheme) noexcept;

struct PathSample {
    std::vector<double> times;
    std::vector<double> values;
    Scheme scheme = Scheme::Exact;
    std::uint64_t seed = 0;
    /// Euler only: grid index of the first step that produced X <= 0. The
    /// path holds the strictly positive prefix before it.
    std::optional<std::size_t> truncated_at;

    ObservationSeries series() const { return validate_series(times, values); }
};

/// Unit-scale Weibull density k t^(k-1) exp(-t^k).
double weibull_pdf(double t, double shape);

/// E[X_t] = x0 (t/eps)^gamma exp(eps^(gamma+1) - t^(gamma+1)), for t >= eps.
double mean_xt(const ModelParams& params, double t);

/// Samples the exact transition law on the grid: ln X moves by
/// gamma ln(t'/t) - (t'^(gamma+1) - t^(gamma+1)) - sigma^2 h / 2 + sigma sqrt(h) Z
/// with one standard normal Z per step drawn from NormalSampler(seed).
PathSample exact_path(const ModelParams& params, const TimeGrid& grid, std::uint64_t seed);

/// Explicit Euler-Maruyama on X, consuming the same normal draws in the same
/// order as exact_path for equal seeds.
PathSample euler_path(const ModelParams& params, const TimeGrid& grid, std::uint64_t seed);

namespace testing {

// sigma = 0 skeletons. ModelParams refuses sigma = 0, so the deterministic
// paths are only reachable through these entry points.
PathSample noise_free_exact_path(double gamma, double x0, const TimeGrid& grid);
PathSample noise_free_euler_path(double gamma, double x0, const TimeGrid& grid);

} // namespace testing

} // namespace wsde
