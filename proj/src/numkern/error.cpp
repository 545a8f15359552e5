#include "copcone/error.hpp"

namespace copcone {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::Internal: return "INTERNAL";
    case ErrorCode::NotSymmetric: return "NOT_SYMMETRIC";
    case ErrorCode::NotCopositive: return "NOT_COPOSITIVE";
    case ErrorCode::NotNonneg: return "NOT_NONNEG";
    case ErrorCode::NotDd: return "NOT_DD";
    case ErrorCode::NotPositive: return "NOT_POSITIVE";
    case ErrorCode::NotDnn: return "NOT_DNN";
    case ErrorCode::OrderTooSmall: return "ORDER_TOO_SMALL";
    case ErrorCode::PerronNotPositive: return "PERRON_NOT_POSITIVE";
    case ErrorCode::NotOrthogonalToHorn: return "NOT_ORTHOGONAL_TO_HORN";
    case ErrorCode::ColumnOutsideCones: return "COLUMN_OUTSIDE_CONES";
    case ErrorCode::KOutOfRange: return "K_OUT_OF_RANGE";
    case ErrorCode::NewtonDiverged: return "NEWTON_DIVERGED";
    case ErrorCode::PositivityLost: return "POSITIVITY_LOST";
    case ErrorCode::NotOrthogonal: return "NOT_ORTHOGONAL";
    case ErrorCode::NotCopositiveWitness: return "NOT_COPOSITIVE_WITNESS";
    case ErrorCode::InconsistentBounds: return "INCONSISTENT_BOUNDS";
    case ErrorCode::FactorMismatch: return "FACTOR_MISMATCH";
    case ErrorCode::ZeroRow: return "ZERO_ROW";
  }
  return "UNKNOWN";
}

}  // namespace copcone
