#include "stallings/error.hpp"

namespace stallings {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::InvalidGenerator: return "InvalidGenerator";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::NotACover: return "NotACover";
    case ErrorCode::NotAPrecover: return "NotAPrecover";
    case ErrorCode::NotACoveringPair: return "NotACoveringPair";
    case ErrorCode::NotTransitive: return "NotTransitive";
    case ErrorCode::NotFiniteIndex: return "NotFiniteIndex";
    case ErrorCode::NotSeparable: return "NotSeparable";
    case ErrorCode::ConditionTooLarge: return "ConditionTooLarge";
    case ErrorCode::TooManyCompletions: return "TooManyCompletions";
    case ErrorCode::TooManyQuotients: return "TooManyQuotients";
    case ErrorCode::PrimeTooLarge: return "PrimeTooLarge";
    case ErrorCode::PullbackTooLarge: return "PullbackTooLarge";
    case ErrorCode::DegreeTooLarge: return "DegreeTooLarge";
    case ErrorCode::BudgetExhausted: return "BudgetExhausted";
  }
  return "Unknown";
}

int exit_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::BudgetExhausted:
      return 2;
    case ErrorCode::TooManyCompletions:
    case ErrorCode::TooManyQuotients:
    case ErrorCode::PrimeTooLarge:
    case ErrorCode::PullbackTooLarge:
    case ErrorCode::DegreeTooLarge:
      return 4;
    default:
      return 3;
  }
}

}  // namespace stallings
