#include "qforms/error.hpp"

namespace qforms {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ZeroInput: return "ZeroInput";
    case ErrorKind::NotCoprime: return "NotCoprime";
    case ErrorKind::IsSquare: return "IsSquare";
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::PrimeTooLarge: return "PrimeTooLarge";
    case ErrorKind::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorKind::DimensionExceeded: return "DimensionExceeded";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ZeroScalar: return "ZeroScalar";
    case ErrorKind::EmptyResult: return "EmptyResult";
    case ErrorKind::InvalidProfile: return "InvalidProfile";
    case ErrorKind::SearchExhausted: return "SearchExhausted";
    case ErrorKind::HypothesesViolated: return "HypothesesViolated";
    case ErrorKind::NotApplicable: return "NotApplicable";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::NotAdmissible: return "NotAdmissible";
    case ErrorKind::NotComparable: return "NotComparable";
    case ErrorKind::EvenDimension: return "EvenDimension";
    case ErrorKind::ParityViolation: return "ParityViolation";
    case ErrorKind::DimensionOrder: return "DimensionOrder";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace qforms
