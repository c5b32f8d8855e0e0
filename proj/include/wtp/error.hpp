#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wtp {

enum class ErrorCode {
  // input validation
  EmptyDigits,
  DigitOutOfRange,
  BasesNotSorted,
  RankTooSmall,
  LevelOutOfRange,
  DuplicateLabelAtVertex,
  DeadVertex,
  UnknownVertex,
  InadmissibleWord,
  ExponentOutOfRange,
  ExponentLengthMismatch,
  DistributionInvalid,
  PotentialInvalid,
  ParseError,
  ValidationError,
  // computation
  WindowUnsupported,
  NotAligned,
  UpperLevelsNotFullShift,
  PotentialWindowTooLarge,
  ComplexityBudgetExceeded,
  DidNotConverge,
  UnsupportedCombination,
};

std::string_view to_string(ErrorCode code);

/// True for codes that signal bad input rather than a failed computation.
bool is_validation_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace wtp
