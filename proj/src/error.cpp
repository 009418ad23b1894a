#include "hansen/error.hpp"

namespace hansen {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidInput: return "InvalidInput";
        case ErrorCode::InvalidProbabilities: return "InvalidProbabilities";
        case ErrorCode::ZeroPayoff: return "ZeroPayoff";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
        case ErrorCode::DegeneratePrices: return "DegeneratePrices";
        case ErrorCode::StateSpaceMismatch: return "StateSpaceMismatch";
        case ErrorCode::InvalidBeta: return "InvalidBeta";
        case ErrorCode::ArbitrageDetected: return "ArbitrageDetected";
        case ErrorCode::NotScenarioBacked: return "NotScenarioBacked";
        case ErrorCode::NotAKernel: return "NotAKernel";
        case ErrorCode::NegativeKernel: return "NegativeKernel";
        case ErrorCode::NotOrthogonal: return "NotOrthogonal";
        case ErrorCode::NonPositiveMean: return "NonPositiveMean";
        case ErrorCode::NoDownside: return "NoDownside";
        case ErrorCode::InvalidHorizon: return "InvalidHorizon";
        case ErrorCode::TreeTooLarge: return "TreeTooLarge";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::InternalInvariant: return "InternalInvariant";
    }
    return "Unknown";
}

bool is_validation_error(ErrorCode code) {
    return code != ErrorCode::InternalInvariant;
}

}  // namespace hansen
