#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "wsde/estimate.hpp"
#include "wsde/model.hpp"
#include "wsde/study.hpp"

namespace wsde::io {

using Json = nlohmann::ordered_json;

/// Round-trip text for CSV cells: printf "%.17g".
std::string format_double(double value);

/// `t,x` CSV, one row per point, values as format_double.
std::string series_csv(std::span<const double> times, std::span<const double> values);

struct RawSeries {
    std::vector<double> times;
    std::vector<double> values;
};

/// Parses `t,x` CSV text. The header line is required. Throws Error(Parse)
/// whose index is the zero-based data row.
RawSeries parse_series_csv(const std::string& text);

/// Reads and validates; validation errors keep the zero-based data row as
/// their index.
ObservationSeries read_series_csv(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
/// Writes atomically enough for the CLI: truncate then write. Throws Error(Io).
void write_file(const std::filesystem::path& path, const std::string& contents);

Json to_json(const ModelParams& params);
Json to_json(const EstimationResult& result);
Json to_json(const BootstrapResult& result);
Json to_json(const StudySummary& summary);
Json to_json(const ParameterSummary& summary);
Json to_json(const BiasCell& cell);

/// Rows `parameter,truth,mean,bias,sd,rmse,mc_se` for gamma, sigma, sigma2.
std::string study_csv(const StudySummary& summary);

/// Rows `n,h,replications,failures,mean_abs_error,se_abs_error,signed_bias,se_signed_bias`.
std::string bias_scan_csv(const std::vector<BiasCell>& cells);

} // namespace wsde::io
