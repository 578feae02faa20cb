#pragma once

#include <stdexcept>
#include <string>

namespace rodvol {

enum class ErrorCode {
    Dimension,
    Precondition,
    NotUnimodular,
    NonPrimitive,
    ZeroVector,
    DuplicatePlacement,
    OutOfRange,
    Malformed,
    Mismatch,
    NotHyperbolic,
    Invariant,
};

inline const char* to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::Dimension: return "dimension";
    case ErrorCode::Precondition: return "precondition";
    case ErrorCode::NotUnimodular: return "not_unimodular";
    case ErrorCode::NonPrimitive: return "non_primitive";
    case ErrorCode::ZeroVector: return "zero_vector";
    case ErrorCode::DuplicatePlacement: return "duplicate_placement";
    case ErrorCode::OutOfRange: return "out_of_range";
    case ErrorCode::Malformed: return "malformed";
    case ErrorCode::Mismatch: return "mismatch";
    case ErrorCode::NotHyperbolic: return "not_hyperbolic";
    case ErrorCode::Invariant: return "invariant";
    }
    return "unknown";
}

/// Single exception type for the library; `code()` distinguishes the failure class.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

    /// Input problems are the caller's fault; Invariant means a bug in here.
    bool is_input_error() const noexcept { return code_ != ErrorCode::Invariant; }

private:
    ErrorCode code_;
};

} // namespace rodvol
