#pragma once

#include <stdexcept>
#include <string>

namespace whitlab {

// Error codes shared between the C++ core and the C API surface.
enum class ErrorCode : int {
    Ok = 0,
    InvalidArgument,
    DivisionByZero,
    PrecisionExhausted,
    NonSquare,
    BadBranch,
    OutOfDomain,
    NoSuchRoot,
    Divergent,
    ConductorTooSmall,
    NotAUnit,
    TrivialCharacter,
    LevelTooLow,
    DomainEmpty,
    RankZero,
    PreconditionViolated,
    BadConductor,
    CentralCharacterNotTrivial,
    UnsupportedCase,
    IncompatibleSelector,
    GammaOutOfRange,
    EnumerationTooLarge,
    UnsupportedStratum,
    HypothesisFailed,
    ConstraintViolated,
    OutOfRange,
    VerifyFailed,
    Internal,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& msg)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + msg), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

} // namespace whitlab
