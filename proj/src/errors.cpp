#include "ncsaito/errors.hpp"

namespace ncsaito {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::TruncMismatch: return "TruncMismatch";
        case ErrorCode::NotAutomorphism: return "NotAutomorphism";
        case ErrorCode::NonRationalSpectrum: return "NonRationalSpectrum";
        case ErrorCode::Inconsistent: return "Inconsistent";
        case ErrorCode::ZeroPotential: return "ZeroPotential";
        case ErrorCode::LevelTooLarge: return "LevelTooLarge";
        case ErrorCode::NotCertifiedFinite: return "NotCertifiedFinite";
        case ErrorCode::NotQuasiHomogeneous: return "NotQuasiHomogeneous";
        case ErrorCode::NotDiagonal: return "NotDiagonal";
        case ErrorCode::NotPrinciple: return "NotPrinciple";
        case ErrorCode::NotCommuting: return "NotCommuting";
        case ErrorCode::NotSemisimple: return "NotSemisimple";
        case ErrorCode::UniquenessViolated: return "UniquenessViolated";
        case ErrorCode::WeightOutOfRange: return "WeightOutOfRange";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::UnknownVariable: return "UnknownVariable";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "UnknownError";
}

}  // namespace ncsaito
