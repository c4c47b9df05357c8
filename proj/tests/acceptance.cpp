// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "wsde/cli.hpp"
#include "wsde/error.hpp"
#include "wsde/estimate.hpp"
#include "wsde/io.hpp"
#include "wsde/kernels.hpp"
#include "wsde/likelihood.hpp"
#include "wsde/rng.hpp"
#include "wsde/simulate.hpp"
#include "wsde/study.hpp"

using namespace wsde;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

const ModelParams kReference(1.0, 0.2, 10.0, 1e-3);

Outcome mean_identity() {
    const auto start = Clock::now();
    Xoshiro256 gen(2024);
    double worst = 0.0;
    bool ok = true;
    for (int draw = 0; draw < 10; ++draw) {
        const double gamma = 0.5 + 2.0 * gen.uniform_open();
        const double sigma = 0.1 + 0.4 * gen.uniform_open();
        const double x0 = 1.0 + 19.0 * gen.uniform_open();
        const double eps = 1e-3 + 0.099 * gen.uniform_open();
        const ModelParams p(gamma, sigma, x0, eps);
        const auto grid = TimeGrid::uniform(eps, (1.0 - eps) / 50.0, 51);
        const auto seeds = replicate_seeds(gen.next(), 100000);
        const auto x = terminal_values(p, grid, seeds, Scheme::Exact, Execution::Parallel);
        double sum = 0.0, sq = 0.0;
        for (double v : x) sum += v;
        const double mean = sum / double(x.size());
        for (double v : x) sq += (v - mean) * (v - mean);
        const double se = std::sqrt(sq / double(x.size() - 1) / double(x.size()));
        const double z = std::abs(mean - mean_xt(p, grid.end())) / se;
        worst = std::max(worst, z);
        ok = ok && z <= 3.0;
    }
    const double elapsed = seconds_since(start);
    return {ok && elapsed < 30.0, fmt("worst |z| = %.3f over 10 draws x 1e5 paths, %.2f s (limit 3 SE, 30 s)", worst, elapsed)};
}

Outcome proportionality() {
    const auto start = Clock::now();
    Xoshiro256 gen(7);
    double worst = 0.0;
    for (int draw = 0; draw < 10; ++draw) {
        const ModelParams p(0.2 + 3.0 * gen.uniform_open(), 0.1 + gen.uniform_open(), 0.5 + 20.0 * gen.uniform_open(),
                            1e-3 + 0.1 * gen.uniform_open());
        const double t_end = 2.0;
        double lo = INFINITY, hi = -INFINITY;
        for (int i = 0; i < 100; ++i) {
            const double t = p.eps() + (t_end - p.eps()) * i / 99.0;
            const double ratio = mean_xt(p, t) / weibull_pdf(t, p.gamma() + 1.0);
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
        worst = std::max(worst, (hi - lo) / hi);
    }
    const double elapsed = seconds_since(start);
    return {worst < 1e-10 && elapsed < 1.0,
            fmt("max relative spread %.3e, %.4f s (limit 1e-10, 1 s)", worst, elapsed)};
}

struct Instance {
    ObservationSeries series;
    double gamma;
    double sigma2;
};

std::vector<Instance> random_instances(std::uint64_t seed, bool allow_irregular) {
    Xoshiro256 gen(seed);
    std::vector<Instance> out;
    for (int i = 0; i < 100; ++i) {
        const double g = 0.2 + 2.5 * gen.uniform_open(), s = 0.05 + 0.5 * gen.uniform_open();
        const double eps = 1e-3 + 0.05 * gen.uniform_open();
        const std::size_t n = 20 + gen.next() % 500;
        const ModelParams p(g, s, 1.0 + 50.0 * gen.uniform_open(), eps);
        TimeGrid grid = TimeGrid::uniform(eps, 1e-3 + 1e-2 * gen.uniform_open(), n);
        if (allow_irregular && i % 2 == 1) {
            std::vector<double> t{eps};
            for (std::size_t k = 1; k < n; ++k) t.push_back(t.back() + 1e-4 + 1e-2 * gen.uniform_open());
            grid = TimeGrid::from_times(t);
        }
        auto series = exact_path(p, grid, gen.next()).series();
        out.push_back({std::move(series), g * (0.8 + 0.4 * gen.uniform_open()), s * s * (0.5 + gen.uniform_open())});
    }
    return out;
}

Outcome likelihood_oracle() {
    double worst = 0.0;
    for (const auto& inst : random_instances(303, true)) {
        const double mine = neg_log_likelihood(inst.series, inst.gamma, inst.sigma2);
        const double ref = double(oracle::nll(oracle::vec(inst.series.times()), oracle::vec(inst.series.values()),
                                              inst.gamma, inst.sigma2));
        worst = std::max(worst, std::abs(mine - ref) / std::abs(ref));
    }
    return {worst <= 1e-12, fmt("max relative difference %.3e on 100 instances (limit 1e-12)", worst)};
}

Outcome profile_correctness() {
    double worst_score = 0.0, worst_match = 0.0;
    for (const auto& inst : random_instances(404, true)) {
        const auto& s = inst.series;
        const double v = uniform_step(s) ? sigma2_profile(s, inst.gamma) : sigma2_profile_general(s, inst.gamma);
        auto f = [&](double x) { return neg_log_likelihood(s, inst.gamma, x); };
        const double d = oracle::central_difference(f, v, 1e-4 * v);
        worst_score = std::max(worst_score, std::abs(d) * v / std::max(1.0, std::abs(f(v))));
        const double numeric = oracle::golden_section(
            [&](double x) {
                return oracle::nll(oracle::vec(s.times()), oracle::vec(s.values()), inst.gamma, x);
            },
            1e-2 * v, 1e2 * v, 1e-13 * v);
        worst_match = std::max(worst_match, std::abs(numeric - v) / v);
    }
    return {worst_score < 1e-6 && worst_match <= 1e-8,
            fmt("max relative score %.3e (limit 1e-6), max closed-form vs numeric %.3e (limit 1e-8)", worst_score,
                worst_match)};
}

Outcome reference_study() {
    const auto start = Clock::now();
    const auto s = mc_study(kReference, 1000, 1e-3, 100, 5, FitMode::ExactMLE);
    const double elapsed = seconds_since(start);
    const double reported_se_gamma = 0.006651509, reported_se_sigma = 0.005168557;
    auto within5 = [](double sd, double ref) { return sd >= ref / 5.0 && sd <= ref * 5.0; };
    const bool ok = std::abs(s.gamma.mean - 1.0) <= 0.03 && std::abs(s.sigma.mean - 0.2) <= 0.01 &&
                    within5(s.gamma.sd, reported_se_gamma) && within5(s.sigma.sd, reported_se_sigma) && elapsed < 60.0 &&
                    s.failures == 0;
    return {ok, fmt("mean gamma %.5f, mean sigma %.5f, sd gamma %.5f, sd sigma %.5f, %zu failures, %.2f s", s.gamma.mean,
                    s.sigma.mean, s.gamma.sd, s.sigma.sd, s.failures, elapsed)};
}

Outcome bias_trend() {
    const std::size_t reps = 200;
    const auto by_n = bias_scan(kReference, {250, 500, 1000}, {1e-3}, reps, 6);
    const auto by_h = bias_scan(kReference, {1000}, {4e-3, 2e-3, 1e-3}, reps, 6);
    bool ok = true;
    std::string detail;
    auto check = [&](const std::vector<BiasCell>& cells, const char* label) {
        detail += label;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            detail += fmt(" %.3e(%.1e)", cells[i].mean_abs_error, cells[i].se_abs_error);
            if (i == 0) continue;
            const double allowance = 2.0 * std::hypot(cells[i].se_abs_error, cells[i - 1].se_abs_error);
            ok = ok && cells[i].mean_abs_error <= cells[i - 1].mean_abs_error + allowance;
        }
        detail += ";";
    };
    check(by_n, " N=250,500,1000:");
    check(by_h, " h=4e-3,2e-3,1e-3:");
    return {ok, "mean |sigma2_hat - sigma2| (se)" + detail};
}

Outcome strong_coupling() {
    const auto seeds = replicate_seeds(8, 1000);
    const ModelParams p = kReference;
    const auto coarse = strong_error(p, TimeGrid::uniform(p.eps(), 1e-3, 1000), seeds, Execution::Parallel);
    const auto fine = strong_error(p, TimeGrid::uniform(p.eps(), 5e-4, 1999), seeds, Execution::Parallel);
    return {fine.mean_abs < coarse.mean_abs,
            fmt("E|Euler - exact| at T=1: h=1e-3 %.5e (se %.1e), h=5e-4 %.5e (se %.1e)", coarse.mean_abs,
                coarse.std_error, fine.mean_abs, fine.std_error)};
}

Outcome bootstrap_coverage() {
    const auto start = Clock::now();
    const auto seeds = replicate_seeds(9, 100);
    const auto grid = TimeGrid::uniform(kReference.eps(), 1e-3, 1000);
    int cover_gamma = 0, cover_sigma = 0, failed = 0;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        try {
            const auto series = exact_path(kReference, grid, seeds[i]).series();
            FitOptions opt;
            opt.seed = derive_seed(seeds[i], 1);
            opt.bootstrap_reps = 200;
            const auto fit = fit_mle(series, opt);
            const auto b = bootstrap_ci(series, fit, opt);
            for (const auto& ci : b.intervals) {
                const double truth = ci.parameter == "gamma" ? kReference.gamma() : kReference.sigma();
                const bool covered = ci.lower <= truth && truth <= ci.upper;
                if (covered) (ci.parameter == "gamma" ? cover_gamma : cover_sigma)++;
            }
        } catch (const Error&) {
            ++failed;
        }
    }
    const bool ok = cover_gamma >= 80 && cover_gamma <= 97 && cover_sigma >= 80 && cover_sigma <= 97;
    return {ok, fmt("90%% intervals covered gamma %d/100, sigma %d/100 (%d failed), %.1f s (target 80-97)", cover_gamma,
                    cover_sigma, failed, seconds_since(start))};
}

Outcome determinism() {
    const fs::path dir = fs::temp_directory_path() / "wsde_acceptance_determinism";
    fs::create_directories(dir);
    auto file = [&](const char* name) { return (dir / name).string(); };
    const std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> runs{
        {{"simulate", "--seed", "11", "--out", file("sim.csv"), "--report", file("sim.json")},
         {file("sim.csv"), file("sim.json")}},
        {{"simulate", "--seed", "11", "--scheme", "euler", "--out", file("euler.csv")}, {file("euler.csv")}},
        {{"estimate", "--in", file("sim.csv"), "--seed", "3", "--ci", "both", "--reps", "50", "--out", file("est.json")},
         {file("est.json")}},
        {{"estimate", "--in", file("sim.csv"), "--seed", "3", "--mode", "paper", "--out", file("paper.json")},
         {file("paper.json")}},
        {{"mc", "--reps", "10", "--seed", "4", "--out", file("mc.json"), "--csv", file("mc.csv")},
         {file("mc.json"), file("mc.csv")}},
        {{"scan", "--n-values", "100,200", "--reps", "5", "--seed", "4", "--out", file("scan.json"), "--csv",
          file("scan.csv")},
         {file("scan.json"), file("scan.csv")}},
        {{"moments", "--gamma", "1.5", "--out", file("moments.csv")}, {file("moments.csv")}},
    };
    bool ok = true;
    std::size_t compared = 0;
    std::string first_mismatch;
    for (const auto& [args, outputs] : runs) {
        std::vector<std::string> first;
        std::string stdout_first;
        for (int round = 0; round < 2; ++round) {
            std::ostringstream out, err;
            const int code = cli::run(args, out, err);
            if (code != 0) {
                ok = false;
                first_mismatch = args.front() + " exited " + std::to_string(code) + ": " + err.str();
                break;
            }
            std::vector<std::string> contents;
            for (const auto& path : outputs) contents.push_back(io::read_file(path));
            if (round == 0) {
                first = contents;
                stdout_first = out.str();
            } else {
                if (contents != first || out.str() != stdout_first) {
                    ok = false;
                    if (first_mismatch.empty()) first_mismatch = args.front();
                }
                compared += outputs.size();
            }
        }
    }
    fs::remove_all(dir);
    return {ok, ok ? fmt("%zu output files byte-identical across repeated runs of all 5 subcommands", compared)
                   : "mismatch: " + first_mismatch};
}

} // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"mean function identity", mean_identity},
        {"mean / Weibull density proportionality", proportionality},
        {"likelihood oracle equivalence", likelihood_oracle},
        {"sigma^2 profile correctness", profile_correctness},
        {"reference setting Monte Carlo study", reference_study},
        {"bias trend in N and h", bias_trend},
        {"strong error under step halving", strong_coupling},
        {"bootstrap coverage", bootstrap_coverage},
        {"determinism of every subcommand", determinism},
    };
    int failures = 0;
    int index = 0;
    for (const auto& [name, check] : criteria) {
        ++index;
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        if (!o.pass) ++failures;
        std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
