#include "drgsplit/errors.hpp"

namespace drgsplit {

const char* error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Ok: return "Ok";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidFamilyParams: return "InvalidFamilyParams";
    case ErrorCode::DiameterTooSmall: return "DiameterTooSmall";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::NotDistanceRegular: return "NotDistanceRegular";
    case ErrorCode::NotQPolynomial: return "NotQPolynomial";
    case ErrorCode::DirectSumViolation: return "DirectSumViolation";
    case ErrorCode::DualityViolation: return "DualityViolation";
    case ErrorCode::DecompositionFailed: return "DecompositionFailed";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::EigenvalueCollision: return "EigenvalueCollision";
    case ErrorCode::ConditioningFailure: return "ConditioningFailure";
    case ErrorCode::VertexOutOfRange: return "VertexOutOfRange";
    case ErrorCode::NonConstantOnSubconstituent: return "NonConstantOnSubconstituent";
    case ErrorCode::AmbientMismatch: return "AmbientMismatch";
    case ErrorCode::NotContained: return "NotContained";
    case ErrorCode::NonContiguousSupport: return "NonContiguousSupport";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::PairMismatch: return "PairMismatch";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace drgsplit
