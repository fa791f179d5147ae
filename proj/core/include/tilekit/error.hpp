#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tilekit {

enum class ErrorCode {
  kRankDeficient,
  kDimensionMismatch,
  kTooLarge,
  kNotIndependent,
  kWrongArity,
  kNonIntegerValues,
  kPreconditionUnverified,
  kNotACotile,
  kPropertyStarRequired,
  kInputNotCotile,
  kInputContractViolation,
  kNotAPartition,
  kNoCycle,
  kEmptyOrFull,
  kNotPrime,
  kOutOfLattice,
  kVerificationFailed,
  kTrivialTile,
  kNotATiling,
  kRankDeficientStabilizer,
  kNotNormalized,
  kInvalidArgument,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so that
// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tilekit
