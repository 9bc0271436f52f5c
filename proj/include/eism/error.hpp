#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace eism {

enum class ErrorKind {
    ZeroDenominator,
    DenominatorDivisibleByP,
    NotAUnit,
    NegativeValuationResult,
    InvalidField,
    InvalidArgument,
    PrecisionUnavailable,
    SupportNotInvertible,
    GroupOrderNotInvertible,
    LevelMismatch,
    UnsupportedSize,
    SingularMatrix,
    LatticeMismatch,
    EquivarianceViolation,
    ShapeMismatch,
    RingMismatch,
    SpanNotClosed,
    NearSingularAutomorphyFactor,
    HypothesisViolation,
    VerificationFailure,
};

std::string_view error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace eism
