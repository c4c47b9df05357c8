#include <cmath>

#include "paths_internal.hpp"
#include "wsde/error.hpp"
#include "wsde/kernels.hpp"

namespace wsde {

namespace omp {

std::vector<double> terminal_values(const ModelParams& params, const TimeGrid& grid,
                                    std::span<const std::uint64_t> seeds, Scheme scheme) {
    if (grid.eps() != params.eps()) throw Error(ErrorCode::GridMismatch, "grid must start at the model eps");
    const detail::Coefficients c{params.gamma(), params.sigma(), params.x0()};
    if (scheme == Scheme::Exact) {
        const detail::ExactSteps steps(c, grid.times());
        return map_indexed<double>(seeds.size(), Execution::Parallel,
                                   [&](std::size_t i) { return detail::terminal_exact(c, steps, seeds[i]); });
    }
    return map_indexed<double>(seeds.size(), Execution::Parallel,
                               [&](std::size_t i) { return detail::terminal_euler(c, grid.times(), seeds[i], i); });
}

std::vector<double> coupled_differences(const ModelParams& params, const TimeGrid& grid,
                                        std::span<const std::uint64_t> seeds) {
    if (grid.eps() != params.eps()) throw Error(ErrorCode::GridMismatch, "grid must start at the model eps");
    const detail::Coefficients c{params.gamma(), params.sigma(), params.x0()};
    const detail::ExactSteps steps(c, grid.times());
    return map_indexed<double>(seeds.size(), Execution::Parallel, [&](std::size_t i) {
        return std::abs(detail::terminal_euler(c, grid.times(), seeds[i], i) -
                        detail::terminal_exact(c, steps, seeds[i]));
    });
}

} // namespace omp

} // namespace wsde
