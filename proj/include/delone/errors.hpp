#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace delone {

enum class ErrorCode {
  NonOrthogonal,
  DegenerateFrame,
  TooFewPoints,
  BoxTooSmall,
  CenterNotInPatch,
  MarginViolation,
  RadiusMismatch,
  NoUsableCenters,
  LowerDimensionalCluster,
  NotAGroup,
  UnrecognizedGroup,
  GroupTooLarge,
  UnknownLabel,
  InvalidShift,
  DegenerateAntiprism,
  InfeasibleParams,
  BudgetExhausted,
  PackingViolation,
  ParseError,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

// Every domain failure in the library is reported through this type; the
// code is stable and machine readable, the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace delone
