#include "wsde/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "wsde/error.hpp"

namespace wsde::io {

namespace {

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json optional_number(const std::optional<double>& v) { return v ? number(*v) : Json(nullptr); }

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

double parse_cell(std::string_view cell, std::size_t row) {
    cell = trim(cell);
    double v = 0.0;
    const auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc{} || end != cell.data() + cell.size()) {
        throw Error(ErrorCode::Parse, "data row " + std::to_string(row + 1) + ": cannot parse '" + std::string(cell) + "'",
                    row);
    }
    return v;
}

} // namespace

std::string format_double(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string series_csv(std::span<const double> times, std::span<const double> values) {
    std::string out = "t,x\n";
    for (std::size_t k = 0; k < times.size(); ++k) {
        out += format_double(times[k]);
        out += ',';
        out += format_double(values[k]);
        out += '\n';
    }
    return out;
}

RawSeries parse_series_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || trim(line) != "t,x") {
        throw Error(ErrorCode::Parse, "expected header line 't,x'");
    }
    RawSeries raw;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        const auto view = trim(line);
        if (view.empty()) continue;
        const auto comma = view.find(',');
        if (comma == std::string_view::npos || view.find(',', comma + 1) != std::string_view::npos) {
            throw Error(ErrorCode::Parse, "data row " + std::to_string(row + 1) + ": expected two columns", row);
        }
        raw.times.push_back(parse_cell(view.substr(0, comma), row));
        raw.values.push_back(parse_cell(view.substr(comma + 1), row));
        ++row;
    }
    return raw;
}

ObservationSeries read_series_csv(const std::filesystem::path& path) {
    auto raw = parse_series_csv(read_file(path));
    return validate_series(std::move(raw.times), std::move(raw.values));
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
    out << contents;
    if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

Json to_json(const ModelParams& params) {
    return Json{{"gamma", params.gamma()}, {"sigma", params.sigma()}, {"x0", params.x0()}, {"eps", params.eps()}};
}

Json to_json(const EstimationResult& r) {
    Json ci = Json::array();
    for (const auto& c : r.ci) {
        ci.push_back(Json{{"parameter", c.parameter},
                          {"method", to_string(c.method)},
                          {"level", c.level},
                          {"lower", number(c.lower)},
                          {"upper", number(c.upper)}});
    }
    return Json{{"mode", to_string(r.mode)},
                {"gamma_hat", number(r.gamma_hat)},
                {"sigma_hat", number(r.sigma_hat)},
                {"sigma2_hat", number(r.sigma2_hat)},
                {"neg_log_lik", number(r.neg_log_lik)},
                {"stderr_gamma", optional_number(r.stderr_gamma)},
                {"stderr_sigma", optional_number(r.stderr_sigma)},
                {"ci", ci},
                {"iterations", r.iterations},
                {"converged", r.converged},
                {"boundary_hit", r.boundary_hit},
                {"degenerate_sigma", r.degenerate_sigma},
                {"degenerate_score", r.degenerate_score},
                {"diagnostics", r.diagnostics}};
}

Json to_json(const BootstrapResult& b) {
    Json quantiles = Json::object();
    for (const auto& set : b.reference_quantiles) {
        Json row = Json::object();
        for (const auto& [p, q] : set.values) row[format_double(p * 100.0) + "%"] = number(q);
        quantiles[set.parameter] = row;
    }
    return Json{{"replications", b.replications}, {"failures", b.failures}, {"reference_quantiles", quantiles}};
}

Json to_json(const ParameterSummary& p) {
    return Json{{"truth", p.truth}, {"mean", number(p.mean)}, {"bias", number(p.bias)},
                {"sd", number(p.sd)},   {"rmse", number(p.rmse)}, {"mc_se", number(p.mc_se)}};
}

Json to_json(const StudySummary& s) {
    return Json{{"config",
                 {{"params", to_json(s.config.params)},
                  {"n", s.config.n},
                  {"h", s.config.h},
                  {"replications", s.config.replications},
                  {"seed", s.config.seed},
                  {"mode", to_string(s.config.mode)}}},
                {"succeeded", s.succeeded},
                {"failures", s.failures},
                {"gamma", to_json(s.gamma)},
                {"sigma", to_json(s.sigma)},
                {"sigma2", to_json(s.sigma2)},
                {"mean_abs_sigma2_error", number(s.mean_abs_sigma2_error)},
                {"se_abs_sigma2_error", number(s.se_abs_sigma2_error)}};
}

Json to_json(const BiasCell& c) {
    return Json{{"n", c.n},
                {"h", c.h},
                {"replications", c.replications},
                {"failures", c.failures},
                {"mean_abs_error", number(c.mean_abs_error)},
                {"se_abs_error", number(c.se_abs_error)},
                {"signed_bias", number(c.signed_bias)},
                {"se_signed_bias", number(c.se_signed_bias)}};
}

std::string study_csv(const StudySummary& s) {
    std::string out = "parameter,truth,mean,bias,sd,rmse,mc_se\n";
    for (const auto& [name, p] : {std::pair{"gamma", &s.gamma}, std::pair{"sigma", &s.sigma},
                                  std::pair{"sigma2", &s.sigma2}}) {
        out += std::string(name) + ',' + format_double(p->truth) + ',' + format_double(p->mean) + ',' +
               format_double(p->bias) + ',' + format_double(p->sd) + ',' + format_double(p->rmse) + ',' +
               format_double(p->mc_se) + '\n';
    }
    return out;
}

std::string bias_scan_csv(const std::vector<BiasCell>& cells) {
    std::string out = "n,h,replications,failures,mean_abs_error,se_abs_error,signed_bias,se_signed_bias\n";
    for (const auto& c : cells) {
        out += std::to_string(c.n) + ',' + format_double(c.h) + ',' + std::to_string(c.replications) + ',' +
               std::to_string(c.failures) + ',' + format_double(c.mean_abs_error) + ',' +
               format_double(c.se_abs_error) + ',' + format_double(c.signed_bias) + ',' +
               format_double(c.se_signed_bias) + '\n';
    }
    return out;
}

} // namespace wsde::io
