#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qforms {

enum class ErrorKind {
  ZeroInput,
  NotCoprime,
  IsSquare,
  NotPrime,
  PrimeTooLarge,
  DimensionTooSmall,
  DimensionExceeded,
  DimensionMismatch,
  ZeroScalar,
  EmptyResult,
  InvalidProfile,
  SearchExhausted,
  HypothesesViolated,
  NotApplicable,
  PreconditionViolated,
  NotAdmissible,
  NotComparable,
  EvenDimension,
  ParityViolation,
  DimensionOrder,
  ParseError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure surfaced by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace qforms
