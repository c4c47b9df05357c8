#pragma once

// Batch kernels over independent paths and replicates. Every kernel exists as
// a plain serial loop (the reference) and an OpenMP loop; both write results
// by index and reduce in index order afterwards, so their outputs are
// bit-identical regardless of thread count or scheduling.

#include <cstddef>
#include <cstdint>
#include <exception>
#include <span>
#include <vector>

#include "wsde/model.hpp"
#include "wsde/simulate.hpp"

namespace wsde {

enum class Execution { Serial, Parallel };

/// derive_seed(master, i) for i = 0..count-1.
std::vector<std::uint64_t> replicate_seeds(std::uint64_t master, std::size_t count);

struct CoupledError {
    double mean_abs = 0.0;   // mean |X_T^Euler - X_T^Exact|
    double std_error = 0.0;  // sample sd / sqrt(paths)
    std::size_t paths = 0;
};

namespace serial {
std::vector<double> terminal_values(const ModelParams& params, const TimeGrid& grid,
                                    std::span<const std::uint64_t> seeds, Scheme scheme);
std::vector<double> coupled_differences(const ModelParams& params, const TimeGrid& grid,
                                        std::span<const std::uint64_t> seeds);
} // namespace serial

namespace omp {
std::vector<double> terminal_values(const ModelParams& params, const TimeGrid& grid,
                                    std::span<const std::uint64_t> seeds, Scheme scheme);
std::vector<double> coupled_differences(const ModelParams& params, const TimeGrid& grid,
                                        std::span<const std::uint64_t> seeds);
} // namespace omp

/// X at the last grid point for each seed. Euler paths that hit X <= 0 raise
/// NonPositiveState with the seed's index.
std::vector<double> terminal_values(const ModelParams& params, const TimeGrid& grid,
                                    std::span<const std::uint64_t> seeds, Scheme scheme, Execution exec);

/// Shared-seed strong error at the last grid point.
CoupledError strong_error(const ModelParams& params, const TimeGrid& grid,
                          std::span<const std::uint64_t> seeds, Execution exec);

/// out[i] = fn(i) for i in [0, count). Exceptions thrown by fn are captured
/// per index; the one with the smallest index is rethrown after the loop.
template <class R, class F>
std::vector<R> map_indexed(std::size_t count, Execution exec, F&& fn) {
    std::vector<R> out(count);
    std::vector<std::exception_ptr> errors(count);
    const auto n = static_cast<long long>(count);
    if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long long i = 0; i < n; ++i) {
            try {
                out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
            } catch (...) {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
    } else {
        for (long long i = 0; i < n; ++i) {
            try {
                out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
            } catch (...) {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

} // namespace wsde
