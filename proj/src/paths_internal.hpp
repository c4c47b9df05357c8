#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "wsde/error.hpp"
#include "wsde/rng.hpp"
#include "wsde/simulate.hpp"

namespace wsde::detail {

struct Coefficients {
    double gamma;
    double sigma;
    double x0;
};

/// Per-step deterministic log-increment and volatility of the exact scheme.
/// Shared by exact_path and the batch kernels so both produce identical bits.
struct ExactSteps {
    std::vector<double> log_drift;
    std::vector<double> vol;

    ExactSteps(const Coefficients& c, std::span<const double> t) {
        const std::size_t steps = t.size() - 1;
        log_drift.resize(steps);
        vol.resize(steps);
        const double sigma2 = c.sigma * c.sigma;
        double power_prev = std::pow(t[0], c.gamma + 1.0);
        for (std::size_t k = 0; k < steps; ++k) {
            const double h = t[k + 1] - t[k];
            const double power_next = std::pow(t[k + 1], c.gamma + 1.0);
            log_drift[k] = c.gamma * std::log(t[k + 1] / t[k]) - (power_next - power_prev) - 0.5 * sigma2 * h;
            vol[k] = c.sigma * std::sqrt(h);
            power_prev = power_next;
        }
    }
};

/// Walks the exact scheme, calling `visit(k, x_k)` for k = 1..N-1.
template <class Visit>
void walk_exact(const Coefficients& c, const ExactSteps& steps, std::uint64_t seed, Visit&& visit) {
    NormalSampler normal(seed);
    double log_x = std::log(c.x0);
    for (std::size_t k = 0; k < steps.log_drift.size(); ++k) {
        log_x += steps.log_drift[k] + steps.vol[k] * normal();
        visit(k + 1, std::exp(log_x));
    }
}

/// Walks Euler-Maruyama. Stops and returns the index of the first
/// non-positive state, or 0 when the whole grid was positive.
template <class Visit>
std::size_t walk_euler(const Coefficients& c, std::span<const double> t, std::uint64_t seed, Visit&& visit) {
    NormalSampler normal(seed);
    double x = c.x0;
    for (std::size_t k = 0; k + 1 < t.size(); ++k) {
        const double h = t[k + 1] - t[k];
        const double rate = c.gamma / t[k] * (1.0 - std::pow(t[k], c.gamma + 1.0)) - std::pow(t[k], c.gamma);
        x = x + rate * x * h + c.sigma * x * std::sqrt(h) * normal();
        if (!(x > 0.0)) return k + 1;
        visit(k + 1, x);
    }
    return 0;
}

double terminal_exact(const Coefficients& c, const ExactSteps& steps, std::uint64_t seed);
/// Throws NonPositiveState tagged with `index` when the path hits X <= 0.
double terminal_euler(const Coefficients& c, std::span<const double> t, std::uint64_t seed, std::size_t index);

} // namespace wsde::detail
