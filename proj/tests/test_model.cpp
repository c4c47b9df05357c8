#include <doctest.h>

#include "oracles.hpp"
#include "wsde/error.hpp"
#include "wsde/model.hpp"
#include "wsde/simulate.hpp"

using namespace wsde;

namespace {

ErrorCode code_of(std::vector<double> t, std::vector<double> x) {
    try {
        validate_series(std::move(t), std::move(x));
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected a validation error");
    return ErrorCode::Io;
}

} // namespace

TEST_CASE("ModelParams enforces strict positivity") {
    CHECK_NOTHROW(ModelParams(1.0, 0.2, 10.0, 1e-3));
    CHECK_THROWS_AS(ModelParams(0.0, 0.2, 10.0, 1e-3), Error);
    CHECK_THROWS_AS(ModelParams(1.0, 0.0, 10.0, 1e-3), Error);
    CHECK_THROWS_AS(ModelParams(1.0, 0.2, -1.0, 1e-3), Error);
    CHECK_THROWS_AS(ModelParams(1.0, 0.2, 10.0, 0.0), Error);
    CHECK_THROWS_AS(ModelParams(1.0, NAN, 10.0, 1e-3), Error);
}

TEST_CASE("validate_series accepts a minimal valid series") {
    const auto s = validate_series({0.001, 0.002, 0.003}, {10, 9.9, 9.8});
    CHECK(s.size() == 3);
    CHECK(s.increments() == 2);
}

TEST_CASE("validate_series error paths") {
    CHECK(code_of({0.0, 0.001}, {10, 9.9}) == ErrorCode::NonPositiveTime);
    CHECK(code_of({0.001, 0.002, 0.003}, {10, -1, 9.8}) == ErrorCode::NonPositiveValue);
    CHECK(code_of({0.001, 0.002}, {10, 9.9, 9.8}) == ErrorCode::LengthMismatch);
    CHECK(code_of({0.001, 0.003, 0.002}, {10, 9.9, 9.8}) == ErrorCode::NonIncreasingTimes);
    CHECK(code_of({0.001, 0.001, 0.002}, {10, 9.9, 9.8}) == ErrorCode::NonIncreasingTimes);
    CHECK(code_of({0.001, 0.002}, {10, 9.9}) == ErrorCode::TooShort);

    try {
        validate_series({0.001, 0.002, 0.003, 0.004}, {10, 9, 0.0, 8});
    } catch (const Error& e) {
        CHECK(e.index() == 2u);
    }
}

TEST_CASE("validation is idempotent") {
    const auto s = oracle::simulated(1.0, 0.2, 10.0, 1e-3, 1e-3, 200, 5);
    const auto again = validate_series(oracle::vec(s.times()), oracle::vec(s.values()));
    CHECK(again == s);
}

TEST_CASE("drift matches the two algebraic forms") {
    for (double g : {0.3, 1.0, 2.7}) {
        for (double t : {1e-3, 0.1, 0.9, 2.0}) {
            const double other = g / t - (g + 1.0) * std::pow(t, g);
            CHECK(drift_rate(t, g) == doctest::Approx(other).epsilon(1e-12));
        }
    }
    CHECK(drift(0.5, 3.0, 1.0) == doctest::Approx(3.0 * (2.0 - 1.0)));
    CHECK(diffusion(3.0, 0.2) == doctest::Approx(0.6));
}

TEST_CASE("linear growth holds on every simulated grid") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const double gamma = 0.2 + 0.15 * double(seed);
        const ModelParams p(gamma, 0.3, 5.0, 1e-3);
        const auto path = exact_path(p, TimeGrid::uniform(1e-3, 5e-3, 300), seed);
        const auto series = path.series();
        const double L = linear_growth_constant(p, series.times());
        CHECK(L >= p.sigma());
        CHECK(satisfies_linear_growth(p, series));
    }
}
