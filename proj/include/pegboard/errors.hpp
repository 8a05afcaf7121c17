#pragma once

#include <stdexcept>
#include <string>

namespace pegboard {

enum class ErrorCode {
  CollinearOverlap,
  PointOnLoop,
  UnboundedQuery,
  AmbiguousHeight,
  BadAlexander,
  BadSpec,
  SyntaxError,
  InvariantViolation,
  DegenerateIncidence,
  GradingOutOfRange,
  ZeroSurgery,
  BadShape,
  UndefinedAtZero,
  VacuousBound,
  InconsistentInputs,
  ConstraintViolation,
  RangeTooSmall,
  TrivialAlexander,
  EvenDeterminant,
  ParityViolation,
  PreconditionViolation,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pegboard
