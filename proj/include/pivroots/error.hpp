#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pivroots {

enum class ErrorCode {
  DivisionNotExact,
  CapExceeded,
  ZeroDivisorInRecursion,
  OmegaIdenticallyZero,
  DegenerateTransform,
  BacklundMismatch,
  PrecisionInsufficient,
  NotSquarefree,
  Nonconvergence,
  AmbiguousMatch,
  Domain,
  BranchPoint,
  SingularSystem,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DivisionNotExact: return "DIVISION_NOT_EXACT";
    case ErrorCode::CapExceeded: return "CAP_EXCEEDED";
    case ErrorCode::ZeroDivisorInRecursion: return "ZERO_DIVISOR_IN_RECURSION";
    case ErrorCode::OmegaIdenticallyZero: return "OMEGA_IDENTICALLY_ZERO";
    case ErrorCode::DegenerateTransform: return "DEGENERATE_TRANSFORM";
    case ErrorCode::BacklundMismatch: return "BACKLUND_MISMATCH";
    case ErrorCode::PrecisionInsufficient: return "PRECISION_INSUFFICIENT";
    case ErrorCode::NotSquarefree: return "NOT_SQUAREFREE";
    case ErrorCode::Nonconvergence: return "NONCONVERGENCE";
    case ErrorCode::AmbiguousMatch: return "AMBIGUOUS_MATCH";
    case ErrorCode::Domain: return "DOMAIN";
    case ErrorCode::BranchPoint: return "BRANCH_POINT";
    case ErrorCode::SingularSystem: return "SINGULAR_SYSTEM";
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
  }
  return "UNKNOWN";
}

}  // namespace pivroots
