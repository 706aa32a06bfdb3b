#ifndef ARBOR_ERROR_HPP
#define ARBOR_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace arbor {

enum class ErrorCode {
  UnknownGenerator,
  BackendCannotDecide,
  EmptyRelators,
  StableLetterInInput,
  InvalidPresentation,
  ParseError,
  InvalidArgument,
  BudgetExceeded,
  BudgetExhausted,
  DistanceUnknown,
  RadiusInsufficient,
  NotFolded,
  Disconnected,
  NotSubgroup,
  TrivialGenerator,
  MoveInvalid,
  NotBased,
  NotNested,
  NotSurjective,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above; the
/// CLI maps them onto exit statuses.
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
    case ErrorCode::UnknownGenerator: return "UnknownGenerator";
    case ErrorCode::BackendCannotDecide: return "BackendCannotDecide";
    case ErrorCode::EmptyRelators: return "EmptyRelators";
    case ErrorCode::StableLetterInInput: return "StableLetterInInput";
    case ErrorCode::InvalidPresentation: return "InvalidPresentation";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::BudgetExhausted: return "BudgetExhausted";
    case ErrorCode::DistanceUnknown: return "DistanceUnknown";
    case ErrorCode::RadiusInsufficient: return "RadiusInsufficient";
    case ErrorCode::NotFolded: return "NotFolded";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::NotSubgroup: return "NotSubgroup";
    case ErrorCode::TrivialGenerator: return "TrivialGenerator";
    case ErrorCode::MoveInvalid: return "MoveInvalid";
    case ErrorCode::NotBased: return "NotBased";
    case ErrorCode::NotNested: return "NotNested";
    case ErrorCode::NotSurjective: return "NotSurjective";
  }
  return "Unknown";
}

}  // namespace arbor

#endif
