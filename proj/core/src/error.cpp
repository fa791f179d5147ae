#include "tilekit/error.hpp"

namespace tilekit {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kRankDeficient: return "RANK_DEFICIENT";
    case ErrorCode::kDimensionMismatch: return "DIMENSION_MISMATCH";
    case ErrorCode::kTooLarge: return "TOO_LARGE";
    case ErrorCode::kNotIndependent: return "NOT_INDEPENDENT";
    case ErrorCode::kWrongArity: return "WRONG_ARITY";
    case ErrorCode::kNonIntegerValues: return "NON_INTEGER_VALUES";
    case ErrorCode::kPreconditionUnverified: return "PRECONDITION_UNVERIFIED";
    case ErrorCode::kNotACotile: return "NOT_A_COTILE";
    case ErrorCode::kPropertyStarRequired: return "PROPERTY_STAR_REQUIRED";
    case ErrorCode::kInputNotCotile: return "INPUT_NOT_COTILE";
    case ErrorCode::kInputContractViolation: return "INPUT_CONTRACT_VIOLATION";
    case ErrorCode::kNotAPartition: return "NOT_A_PARTITION";
    case ErrorCode::kNoCycle: return "NO_CYCLE";
    case ErrorCode::kEmptyOrFull: return "EMPTY_OR_FULL";
    case ErrorCode::kNotPrime: return "NOT_PRIME";
    case ErrorCode::kOutOfLattice: return "OUT_OF_LATTICE";
    case ErrorCode::kVerificationFailed: return "VERIFICATION_FAILED";
    case ErrorCode::kTrivialTile: return "TRIVIAL_TILE";
    case ErrorCode::kNotATiling: return "NOT_A_TILING";
    case ErrorCode::kRankDeficientStabilizer: return "RANK_DEFICIENT_STABILIZER";
    case ErrorCode::kNotNormalized: return "NOT_NORMALIZED";
    case ErrorCode::kInvalidArgument: return "INVALID_ARGUMENT";
  }
  return "UNKNOWN";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace tilekit
