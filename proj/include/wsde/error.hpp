#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace wsde {

enum class ErrorCode {
    // series / parameter validation
    InvalidParameter,
    LengthMismatch,
    NonIncreasingTimes,
    NonPositiveTime,
    NonPositiveValue,
    TooShort,
    // simulation
    InvalidShape,
    TimeBeforeStart,
    GridMismatch,
    NonPositiveState,
    // likelihood
    NonUniformGrid,
    DomainError,
    // estimation
    BracketFailure,
    NoSignChange,
    NotConverged,
    SingularInformation,
    TooManyFailures,
    EmptyStudy,
    // io
    Parse,
    Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library. `index()` names the offending
/// element (row, grid point, replicate) when there is one.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message,
          std::optional<std::size_t> index = std::nullopt);

    ErrorCode code() const noexcept { return code_; }
    std::optional<std::size_t> index() const noexcept { return index_; }

private:
    ErrorCode code_;
    std::optional<std::size_t> index_;
};

} // namespace wsde
