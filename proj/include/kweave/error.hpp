#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kweave {

enum class ErrorCode {
    NotSquare,
    NotHermitian,
    NonFinite,
    ZeroOperator,
    DimensionMismatch,
    ShapeMismatch,
    ZeroK,
    CapExceeded,
    HypothesesViolated,
    DimTooSmall,
    InvalidArgument,
    BadFile,
};

constexpr std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotSquare: return "NotSquare";
        case ErrorCode::NotHermitian: return "NotHermitian";
        case ErrorCode::NonFinite: return "NonFinite";
        case ErrorCode::ZeroOperator: return "ZeroOperator";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::ZeroK: return "ZeroK";
        case ErrorCode::CapExceeded: return "CapExceeded";
        case ErrorCode::HypothesesViolated: return "HypothesesViolated";
        case ErrorCode::DimTooSmall: return "DimTooSmall";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::BadFile: return "BadFile";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace kweave
