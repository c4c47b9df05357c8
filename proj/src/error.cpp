#include "wsde/error.hpp"

namespace wsde {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NonIncreasingTimes: return "NonIncreasingTimes";
    case ErrorCode::NonPositiveTime: return "NonPositiveTime";
    case ErrorCode::NonPositiveValue: return "NonPositiveValue";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::InvalidShape: return "InvalidShape";
    case ErrorCode::TimeBeforeStart: return "TimeBeforeStart";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::NonPositiveState: return "NonPositiveState";
    case ErrorCode::NonUniformGrid: return "NonUniformGrid";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::BracketFailure: return "BracketFailure";
    case ErrorCode::NoSignChange: return "NoSignChange";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::SingularInformation: return "SingularInformation";
    case ErrorCode::TooManyFailures: return "TooManyFailures";
    case ErrorCode::EmptyStudy: return "EmptyStudy";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, std::optional<std::size_t> index)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), index_(index) {}

} // namespace wsde
