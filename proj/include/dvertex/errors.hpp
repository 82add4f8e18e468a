#pragma once

#include <stdexcept>
#include <string>

namespace dvertex {

enum class ErrorKind {
    DimensionMismatch,
    ZeroWeightDenominator,
    NotAPerfectSquare,
    NotConstant,
    ShapeMismatch,
    LimitExceeded,
};

const char* to_string(ErrorKind kind);

/// A pipeline failure that carries a machine-readable kind. These are reported
/// findings (for example a counterexample to an expected identity), so callers
/// usually attach the offending partition and keep going.
class PipelineError : public std::runtime_error {
public:
    PipelineError(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {
    }
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ZeroWeightDenominator: return "ZeroWeightDenominator";
    case ErrorKind::NotAPerfectSquare: return "NotAPerfectSquare";
    case ErrorKind::NotConstant: return "NotConstant";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::LimitExceeded: return "LimitExceeded";
    }
    return "Unknown";
}

}  // namespace dvertex
