#pragma once

#include <stdexcept>
#include <string>

namespace drgsplit {

// Numeric values double as CLI exit codes and C API status codes; keep them
// in sync with drgsplit.h.
enum class ErrorCode : int {
  Ok = 0,
  InvalidArgument = 1,
  InvalidFamilyParams = 2,
  DiameterTooSmall = 3,
  Disconnected = 4,
  NotDistanceRegular = 5,
  NotQPolynomial = 6,
  DirectSumViolation = 7,
  DualityViolation = 8,
  DecompositionFailed = 9,
  InvariantViolation = 10,
  Io = 11,
  Parse = 12,
  EigenvalueCollision = 13,
  ConditioningFailure = 14,
  VertexOutOfRange = 15,
  NonConstantOnSubconstituent = 16,
  AmbientMismatch = 17,
  NotContained = 18,
  NonContiguousSupport = 19,
  IndexOutOfRange = 20,
  PairMismatch = 21,
  Internal = 99,
};

const char* error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace drgsplit
