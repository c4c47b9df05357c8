#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "wsde/estimate.hpp"
#include "wsde/model.hpp"
#include "wsde/simulate.hpp"

namespace wsde {

/// Repeated simulate -> fit at fixed truth on a uniform grid of `grid_size`
/// points with step `h` starting at params.eps(). Replicate i simulates with
/// derive_seed(seed, i). Estimates are sorted before summation, so the
/// summary does not depend on replicate order or thread scheduling.
/// Throws EmptyStudy for fewer than 2 replications and TooManyFailures when
/// more than 20% of fits fail or do not converge.
StudySummary mc_study(const ModelParams& params, std::size_t grid_size, double h, std::size_t replications,
                      std::uint64_t seed, FitMode mode, const FitOptions& fit = {});

/// Same aggregation over explicitly supplied replicate seeds.
StudySummary mc_study_with_seeds(const ModelParams& params, std::size_t grid_size, double h,
                                 const std::vector<std::uint64_t>& seeds, FitMode mode, const FitOptions& fit = {});

struct BiasCell {
    std::size_t n = 0;
    double h = 0.0;
    std::size_t replications = 0;
    std::size_t failures = 0;
    double mean_abs_error = 0.0;  // mean |sigma2_hat - sigma2|
    double se_abs_error = 0.0;
    double signed_bias = 0.0;     // mean (sigma2_hat - sigma2)
    double se_signed_bias = 0.0;
};

/// One mc_study per (N, h) pair, all cells sharing the replicate seeds of
/// `seed` (common random numbers across cells).
std::vector<BiasCell> bias_scan(const ModelParams& params, const std::vector<std::size_t>& n_values,
                                const std::vector<double>& h_values, std::size_t replications, std::uint64_t seed,
                                const FitOptions& fit = {});

} // namespace wsde
