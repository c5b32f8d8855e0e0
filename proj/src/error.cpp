#include "wtp/error.hpp"

namespace wtp {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyDigits: return "EmptyDigits";
    case ErrorCode::DigitOutOfRange: return "DigitOutOfRange";
    case ErrorCode::BasesNotSorted: return "BasesNotSorted";
    case ErrorCode::RankTooSmall: return "RankTooSmall";
    case ErrorCode::LevelOutOfRange: return "LevelOutOfRange";
    case ErrorCode::DuplicateLabelAtVertex: return "DuplicateLabelAtVertex";
    case ErrorCode::DeadVertex: return "DeadVertex";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::InadmissibleWord: return "InadmissibleWord";
    case ErrorCode::ExponentOutOfRange: return "ExponentOutOfRange";
    case ErrorCode::ExponentLengthMismatch: return "ExponentLengthMismatch";
    case ErrorCode::DistributionInvalid: return "DistributionInvalid";
    case ErrorCode::PotentialInvalid: return "PotentialInvalid";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::WindowUnsupported: return "WindowUnsupported";
    case ErrorCode::NotAligned: return "NotAligned";
    case ErrorCode::UpperLevelsNotFullShift: return "UpperLevelsNotFullShift";
    case ErrorCode::PotentialWindowTooLarge: return "PotentialWindowTooLarge";
    case ErrorCode::ComplexityBudgetExceeded: return "ComplexityBudgetExceeded";
    case ErrorCode::DidNotConverge: return "DidNotConverge";
    case ErrorCode::UnsupportedCombination: return "UnsupportedCombination";
  }
  return "Unknown";
}

bool is_validation_error(ErrorCode code) {
  return code <= ErrorCode::ValidationError;
}

}  // namespace wtp
