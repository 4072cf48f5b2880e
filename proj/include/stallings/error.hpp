#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stallings {

enum class ErrorCode {
  InvalidInput,
  InvalidGenerator,
  DegenerateInput,
  NotACover,
  NotAPrecover,
  NotACoveringPair,
  NotTransitive,
  NotFiniteIndex,
  NotSeparable,
  ConditionTooLarge,
  TooManyCompletions,
  TooManyQuotients,
  PrimeTooLarge,
  PullbackTooLarge,
  DegreeTooLarge,
  BudgetExhausted,
};

std::string_view to_string(ErrorCode code);

// Exit status used by the command-line tool: 2 budget exhausted, 3 invalid
// input, 4 guard exceeded.
int exit_status(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace stallings
