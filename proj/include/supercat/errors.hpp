#pragma once

#include <stdexcept>
#include <string>

namespace supercat {

// Failure categories surfaced by the library. Expected negative answers
// (infeasible region, no certificate found, ...) are ordinary return values,
// never errors; these codes mark contract violations and resource limits.
enum class ErrorCode {
  NotNormalized,
  NegativeEntry,
  DimensionMismatch,
  InvalidOrdering,
  NotIncomparable,
  TooLarge,
  Unbounded,
  DimensionTooHigh,
  VerticesUnavailable,
  IndistinguishableEntropy,
  ParseError,
  Unsupported,
};

inline const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidOrdering: return "InvalidOrdering";
    case ErrorCode::NotIncomparable: return "NotIncomparable";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::DimensionTooHigh: return "DimensionTooHigh";
    case ErrorCode::VerticesUnavailable: return "VerticesUnavailable";
    case ErrorCode::IndistinguishableEntropy: return "IndistinguishableEntropy";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::Unsupported: return "Unsupported";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace supercat
