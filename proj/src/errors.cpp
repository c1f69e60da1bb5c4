#include "tabsuit/errors.hpp"

namespace tabsuit {

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::IoFailure: return "IoFailure";
        case Errc::ParseError: return "ParseError";
        case Errc::RaggedRow: return "RaggedRow";
        case Errc::DuplicateColumn: return "DuplicateColumn";
        case Errc::NonFiniteNumeric: return "NonFiniteNumeric";
        case Errc::EmptyTable: return "EmptyTable";
        case Errc::InvalidArgument: return "InvalidArgument";
        case Errc::MissingMetadata: return "MissingMetadata";
        case Errc::NoEligibleFeatures: return "NoEligibleFeatures";
        case Errc::DegenerateTask: return "DegenerateTask";
        case Errc::TooFewRows: return "TooFewRows";
        case Errc::UnparseablePrompt: return "UnparseablePrompt";
        case Errc::AuthError: return "AuthError";
        case Errc::RateLimitExhausted: return "RateLimitExhausted";
        case Errc::MalformedResponse: return "MalformedResponse";
        case Errc::HttpError: return "HttpError";
        case Errc::BothOptionsMissing: return "BothOptionsMissing";
        case Errc::ParseFailure: return "ParseFailure";
        case Errc::OutOfRange: return "OutOfRange";
        case Errc::TaskEmpty: return "TaskEmpty";
        case Errc::SingleClass: return "SingleClass";
        case Errc::EmptyInput: return "EmptyInput";
        case Errc::ZeroTotalVariance: return "ZeroTotalVariance";
        case Errc::ZeroBaseline: return "ZeroBaseline";
        case Errc::ZeroVariance: return "ZeroVariance";
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::UnsplittableTask: return "UnsplittableTask";
        case Errc::TooFewGroups: return "TooFewGroups";
        case Errc::TooFewTasks: return "TooFewTasks";
        case Errc::ConfigError: return "ConfigError";
        case Errc::Internal: return "Internal";
    }
    return "Unknown";
}

}  // namespace tabsuit
