#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "wsde/error.hpp"
#include "wsde/rng.hpp"
#include "wsde/study.hpp"

using namespace wsde;

namespace {
const ModelParams kTruth(1.0, 0.2, 10.0, 1e-3);
}

TEST_CASE("mc_study summary identities") {
    const auto s = mc_study(kTruth, 300, 1e-3, 12, 42, FitMode::ExactMLE);
    CHECK(s.succeeded + s.failures == 12);
    CHECK(s.config.seed == 42);
    for (const auto* p : {&s.gamma, &s.sigma, &s.sigma2}) {
        CHECK(p->rmse * p->rmse == doctest::Approx(p->bias * p->bias + p->sd * p->sd).epsilon(1e-12));
        CHECK(p->mc_se > 0.0);
        CHECK(p->bias == doctest::Approx(p->mean - p->truth));
    }
    CHECK(s.sigma2.truth == doctest::Approx(0.04));
    CHECK(s.mean_abs_sigma2_error >= std::abs(s.sigma2.bias) - 1e-15);
}

TEST_CASE("mc_study reproducibility") {
    const auto a = mc_study(kTruth, 200, 1e-3, 2, 7, FitMode::ExactMLE);
    const auto b = mc_study(kTruth, 200, 1e-3, 2, 7, FitMode::ExactMLE);
    CHECK(a.gamma.mean == b.gamma.mean);
    CHECK(a.sigma.sd == b.sigma.sd);

    FitOptions serial;
    serial.execution = Execution::Serial;
    const auto c = mc_study(kTruth, 200, 1e-3, 6, 7, FitMode::ExactMLE, serial);
    const auto d = mc_study(kTruth, 200, 1e-3, 6, 7, FitMode::ExactMLE);
    CHECK(c.gamma.mean == d.gamma.mean);
    CHECK(c.sigma2.rmse == d.sigma2.rmse);
}

TEST_CASE("mc_study does not depend on replicate order") {
    auto seeds = replicate_seeds(99, 10);
    const auto a = mc_study_with_seeds(kTruth, 200, 1e-3, seeds, FitMode::ExactMLE);
    std::reverse(seeds.begin(), seeds.end());
    std::rotate(seeds.begin(), seeds.begin() + 3, seeds.end());
    const auto b = mc_study_with_seeds(kTruth, 200, 1e-3, seeds, FitMode::ExactMLE);
    CHECK(a.gamma.mean == b.gamma.mean);
    CHECK(a.gamma.sd == b.gamma.sd);
    CHECK(a.sigma.rmse == b.sigma.rmse);
    CHECK(a.mean_abs_sigma2_error == b.mean_abs_sigma2_error);
}

TEST_CASE("mc_study rejects empty studies") {
    for (std::size_t reps : {0u, 1u}) {
        try {
            mc_study(kTruth, 200, 1e-3, reps, 1, FitMode::ExactMLE);
            FAIL("expected EmptyStudy");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::EmptyStudy);
        }
    }
}

TEST_CASE("mc_study in paper mode") {
    const auto s = mc_study(kTruth, 300, 1e-3, 4, 3, FitMode::PaperLiteral);
    CHECK(s.config.mode == FitMode::PaperLiteral);
    CHECK(std::isfinite(s.gamma.mean));
}

TEST_CASE("bias_scan") {
    const auto cells = bias_scan(kTruth, {100, 200}, {1e-3, 2e-3}, 4, 5);
    REQUIRE(cells.size() == 4);
    CHECK(cells[0].n == 100);
    CHECK(cells[0].h == 1e-3);
    CHECK(cells[1].h == 2e-3);
    CHECK(cells[3].n == 200);
    for (const auto& c : cells) {
        CHECK(c.replications == 4);
        CHECK(c.mean_abs_error >= 0.0);
        CHECK(c.se_abs_error >= 0.0);
    }
    // the first cell is exactly an mc_study with the same seed
    const auto s = mc_study(kTruth, 100, 1e-3, 4, 5, FitMode::ExactMLE);
    CHECK(cells[0].signed_bias == s.sigma2.bias);
    CHECK_THROWS_AS(bias_scan(kTruth, {}, {1e-3}, 4, 5), Error);
    CHECK_THROWS_AS(bias_scan(kTruth, {2}, {1e-3}, 4, 5), Error);
}
