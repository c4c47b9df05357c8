#include <cmath>

#include "paths_internal.hpp"
#include "wsde/error.hpp"
#include "wsde/kernels.hpp"
#include "wsde/rng.hpp"

namespace wsde {

std::vector<std::uint64_t> replicate_seeds(std::uint64_t master, std::size_t count) {
    std::vector<std::uint64_t> seeds(count);
    for (std::size_t i = 0; i < count; ++i) seeds[i] = derive_seed(master, i);
    return seeds;
}

namespace detail {

double terminal_exact(const Coefficients& c, const ExactSteps& steps, std::uint64_t seed) {
    double last = c.x0;
    walk_exact(c, steps, seed, [&](std::size_t, double x) { last = x; });
    return last;
}

double terminal_euler(const Coefficients& c, std::span<const double> t, std::uint64_t seed, std::size_t index) {
    double last = c.x0;
    if (walk_euler(c, t, seed, [&](std::size_t, double x) { last = x; }) != 0) {
        throw Error(ErrorCode::NonPositiveState, "Euler path hit X <= 0", index);
    }
    return last;
}

} // namespace detail

namespace serial {

std::vector<double> terminal_values(const ModelParams& params, const TimeGrid& grid,
                                    std::span<const std::uint64_t> seeds, Scheme scheme) {
    if (grid.eps() != params.eps()) throw Error(ErrorCode::GridMismatch, "grid must start at the model eps");
    const detail::Coefficients c{params.gamma(), params.sigma(), params.x0()};
    std::vector<double> out(seeds.size());
    if (scheme == Scheme::Exact) {
        const detail::ExactSteps steps(c, grid.times());
        for (std::size_t i = 0; i < seeds.size(); ++i) out[i] = detail::terminal_exact(c, steps, seeds[i]);
    } else {
        for (std::size_t i = 0; i < seeds.size(); ++i) out[i] = detail::terminal_euler(c, grid.times(), seeds[i], i);
    }
    return out;
}

std::vector<double> coupled_differences(const ModelParams& params, const TimeGrid& grid,
                                        std::span<const std::uint64_t> seeds) {
    if (grid.eps() != params.eps()) throw Error(ErrorCode::GridMismatch, "grid must start at the model eps");
    const detail::Coefficients c{params.gamma(), params.sigma(), params.x0()};
    const detail::ExactSteps steps(c, grid.times());
    std::vector<double> out(seeds.size());
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        out[i] = std::abs(detail::terminal_euler(c, grid.times(), seeds[i], i) -
                          detail::terminal_exact(c, steps, seeds[i]));
    }
    return out;
}

} // namespace serial

std::vector<double> terminal_values(const ModelParams& params, const TimeGrid& grid,
                                    std::span<const std::uint64_t> seeds, Scheme scheme, Execution exec) {
    return exec == Execution::Serial ? serial::terminal_values(params, grid, seeds, scheme)
                                     : omp::terminal_values(params, grid, seeds, scheme);
}

CoupledError strong_error(const ModelParams& params, const TimeGrid& grid,
                          std::span<const std::uint64_t> seeds, Execution exec) {
    const auto diffs = exec == Execution::Serial ? serial::coupled_differences(params, grid, seeds)
                                                 : omp::coupled_differences(params, grid, seeds);
    CoupledError out;
    out.paths = diffs.size();
    if (diffs.empty()) return out;
    double sum = 0.0;
    for (double d : diffs) sum += d;
    out.mean_abs = sum / static_cast<double>(diffs.size());
    if (diffs.size() > 1) {
        double ss = 0.0;
        for (double d : diffs) ss += (d - out.mean_abs) * (d - out.mean_abs);
        out.std_error = std::sqrt(ss / static_cast<double>(diffs.size() - 1) / static_cast<double>(diffs.size()));
    }
    return out;
}

} // namespace wsde
