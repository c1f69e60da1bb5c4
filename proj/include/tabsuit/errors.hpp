#pragma once

#include <stdexcept>
#include <string>

namespace tabsuit {

// Error codes for every failure mode the toolkit can report. Tests match on
// the code rather than the message text.
enum class Errc {
    IoFailure,
    ParseError,
    RaggedRow,
    DuplicateColumn,
    NonFiniteNumeric,
    EmptyTable,
    InvalidArgument,
    MissingMetadata,
    NoEligibleFeatures,
    DegenerateTask,
    TooFewRows,
    UnparseablePrompt,
    AuthError,
    RateLimitExhausted,
    MalformedResponse,
    HttpError,
    BothOptionsMissing,
    ParseFailure,
    OutOfRange,
    TaskEmpty,
    SingleClass,
    EmptyInput,
    ZeroTotalVariance,
    ZeroBaseline,
    ZeroVariance,
    DimensionMismatch,
    UnsplittableTask,
    TooFewGroups,
    TooFewTasks,
    ConfigError,
    Internal
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace tabsuit
