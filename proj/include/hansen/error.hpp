/**
 * @file error.hpp
 * @brief Error codes and the exception type shared by every module
 */

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hansen {

enum class ErrorCode {
    InvalidInput,
    InvalidProbabilities,
    ZeroPayoff,
    OutOfRange,
    NotPositiveDefinite,
    DegeneratePrices,
    StateSpaceMismatch,
    InvalidBeta,
    ArbitrageDetected,
    NotScenarioBacked,
    NotAKernel,
    NegativeKernel,
    NotOrthogonal,
    NonPositiveMean,
    NoDownside,
    InvalidHorizon,
    TreeTooLarge,
    ParseError,
    IoError,
    InternalInvariant,
};

/// Stable machine-readable name, used in CLI error JSON.
std::string_view to_string(ErrorCode code);

/// True for codes caused by bad inputs (CLI exit 1); false for internal
/// consistency failures (CLI exit 2).
bool is_validation_error(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, std::string context = {})
        : std::runtime_error(message), code_(code), context_(std::move(context)) {}

    ErrorCode code() const noexcept { return code_; }
    const std::string& context() const noexcept { return context_; }

private:
    ErrorCode code_;
    std::string context_;
};

}  // namespace hansen
