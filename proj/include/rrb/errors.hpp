#pragma once

#include <stdexcept>
#include <string>

namespace rrb {

enum class ErrorKind {
  InvalidArgument,
  InsufficientPrecision,
  DependentOmega,
  InvalidData,
  HypothesisNotSatisfied,
  SearchTooLarge,
  RhoNotValuationCriterion,
  Parse,
  Internal,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InsufficientPrecision: return "InsufficientPrecision";
    case ErrorKind::DependentOmega: return "DependentOmega";
    case ErrorKind::InvalidData: return "InvalidData";
    case ErrorKind::HypothesisNotSatisfied: return "HypothesisNotSatisfied";
    case ErrorKind::SearchTooLarge: return "SearchTooLarge";
    case ErrorKind::RhoNotValuationCriterion: return "RhoNotValuationCriterion";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

/// Single exception type for the library; `kind()` drives CLI exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace rrb
