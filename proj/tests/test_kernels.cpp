#include <doctest.h>

#include <cmath>

#include "wsde/error.hpp"
#include "wsde/kernels.hpp"
#include "wsde/rng.hpp"

using namespace wsde;

TEST_CASE("replicate_seeds") {
    const auto s = replicate_seeds(5, 4);
    REQUIRE(s.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(s[i] == derive_seed(5, i));
}

TEST_CASE("serial and parallel kernels agree bit for bit") {
    const ModelParams p(1.3, 0.3, 5.0, 1e-2);
    const auto grid = TimeGrid::uniform(1e-2, 1e-3, 300);
    const auto seeds = replicate_seeds(11, 257);
    for (auto scheme : {Scheme::Exact, Scheme::Euler}) {
        const auto a = serial::terminal_values(p, grid, seeds, scheme);
        const auto b = omp::terminal_values(p, grid, seeds, scheme);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
    }
    const auto c = serial::coupled_differences(p, grid, seeds);
    const auto d = omp::coupled_differences(p, grid, seeds);
    for (std::size_t i = 0; i < c.size(); ++i) CHECK(c[i] == d[i]);

    const auto e1 = strong_error(p, grid, seeds, Execution::Serial);
    const auto e2 = strong_error(p, grid, seeds, Execution::Parallel);
    CHECK(e1.mean_abs == e2.mean_abs);
    CHECK(e1.std_error == e2.std_error);
    CHECK(e1.paths == seeds.size());
}

TEST_CASE("kernels match the single-path simulators") {
    const ModelParams p(0.8, 0.25, 2.0, 1e-2);
    const auto grid = TimeGrid::uniform(1e-2, 2e-3, 200);
    const auto seeds = replicate_seeds(3, 8);
    const auto exact = terminal_values(p, grid, seeds, Scheme::Exact, Execution::Parallel);
    const auto euler = terminal_values(p, grid, seeds, Scheme::Euler, Execution::Parallel);
    const auto diffs = serial::coupled_differences(p, grid, seeds);
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        const double x_exact = exact_path(p, grid, seeds[i]).values.back();
        const double x_euler = euler_path(p, grid, seeds[i]).values.back();
        CHECK(exact[i] == x_exact);
        CHECK(euler[i] == x_euler);
        CHECK(diffs[i] == std::abs(x_euler - x_exact));
    }
}

TEST_CASE("Euler sign flips surface as errors") {
    const ModelParams p(1.0, 0.2, 1.0, 1.0);
    const auto grid = TimeGrid::uniform(1.0, 2.0, 4);
    const auto seeds = replicate_seeds(1, 3);
    try {
        terminal_values(p, grid, seeds, Scheme::Euler, Execution::Parallel);
        FAIL("expected NonPositiveState");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonPositiveState);
    }
}

TEST_CASE("map_indexed rethrows the lowest failing index") {
    try {
        map_indexed<int>(50, Execution::Parallel, [](std::size_t i) -> int {
            if (i == 17 || i == 31) throw Error(ErrorCode::Parse, "boom", i);
            return static_cast<int>(i);
        });
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.index() == 17u);
    }
    const auto v = map_indexed<int>(10, Execution::Parallel, [](std::size_t i) { return static_cast<int>(i * i); });
    CHECK(v[9] == 81);
}
