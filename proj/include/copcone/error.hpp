#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace copcone {

// Error tags surfaced by the library. The CLI prints these verbatim.
enum class ErrorCode {
  InvalidArgument,
  Internal,
  NotSymmetric,
  NotCopositive,
  NotNonneg,
  NotDd,
  NotPositive,
  NotDnn,
  OrderTooSmall,
  PerronNotPositive,
  NotOrthogonalToHorn,
  ColumnOutsideCones,
  KOutOfRange,
  NewtonDiverged,
  PositivityLost,
  NotOrthogonal,
  NotCopositiveWitness,
  InconsistentBounds,
  FactorMismatch,
  ZeroRow,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace copcone
