#pragma once

#include <stdexcept>
#include <string>

namespace ncsaito {

// Machine-readable error codes, mirrored verbatim in CLI output.
enum class ErrorCode {
    TruncMismatch,
    NotAutomorphism,
    NonRationalSpectrum,
    Inconsistent,
    ZeroPotential,
    LevelTooLarge,
    NotCertifiedFinite,
    NotQuasiHomogeneous,
    NotDiagonal,
    NotPrinciple,
    NotCommuting,
    NotSemisimple,
    UniquenessViolated,
    WeightOutOfRange,
    ParseError,
    UnknownVariable,
    InvalidArgument,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace ncsaito
