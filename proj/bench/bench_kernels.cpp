// Serial reference vs OpenMP kernels on the workloads the acceptance suite
// runs: terminal values of many exact paths, shared-seed Euler/exact
// differences, and a batch of profile-likelihood fits.

#include <chrono>
#include <cstdio>
#include <optional>
#include <vector>

#include <omp.h>

#include "wsde/estimate.hpp"
#include "wsde/kernels.hpp"
#include "wsde/study.hpp"

namespace {

template <class F>
double time_ms(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

void report(const char* name, double serial_ms, double omp_ms, bool identical) {
    std::printf("%-28s serial %9.1f ms   omp %9.1f ms   speedup %5.2fx   %s\n", name, serial_ms, omp_ms,
                serial_ms / omp_ms, identical ? "identical" : "MISMATCH");
}

} // namespace

int main() {
    std::printf("threads: %d\n", omp_get_max_threads());
    const wsde::ModelParams params(1.0, 0.2, 10.0, 1e-3);

    {
        const auto grid = wsde::TimeGrid::uniform(1e-3, 1e-2, 100);
        const auto seeds = wsde::replicate_seeds(1, 100000);
        std::vector<double> a, b;
        const double s = time_ms([&] { a = wsde::serial::terminal_values(params, grid, seeds, wsde::Scheme::Exact); });
        const double p = time_ms([&] { b = wsde::omp::terminal_values(params, grid, seeds, wsde::Scheme::Exact); });
        report("terminal_values exact 1e5", s, p, a == b);
    }
    {
        const auto grid = wsde::TimeGrid::uniform(1e-3, 1e-3, 1000);
        const auto seeds = wsde::replicate_seeds(2, 1000);
        std::vector<double> a, b;
        const double s = time_ms([&] { a = wsde::serial::coupled_differences(params, grid, seeds); });
        const double p = time_ms([&] { b = wsde::omp::coupled_differences(params, grid, seeds); });
        report("coupled_differences 1e3", s, p, a == b);
    }
    {
        wsde::FitOptions serial_opts, omp_opts;
        serial_opts.execution = wsde::Execution::Serial;
        omp_opts.execution = wsde::Execution::Parallel;
        std::optional<wsde::StudySummary> a, b;
        const double s = time_ms([&] { a = wsde::mc_study(params, 1000, 1e-3, 100, 3, wsde::FitMode::ExactMLE, serial_opts); });
        const double p = time_ms([&] { b = wsde::mc_study(params, 1000, 1e-3, 100, 3, wsde::FitMode::ExactMLE, omp_opts); });
        report("mc_study 100 fits", s, p, a->gamma.mean == b->gamma.mean && a->sigma.sd == b->sigma.sd);
    }
    return 0;
}
