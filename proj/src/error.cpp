#include "gmf/error.hpp"

namespace gmf {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPsd: return "NotPsd";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::InvalidPermutation: return "InvalidPermutation";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::GroupTooLarge: return "GroupTooLarge";
    case ErrorCode::EnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorCode::GroupMismatch: return "GroupMismatch";
    case ErrorCode::ElementNotInGroup: return "ElementNotInGroup";
    case ErrorCode::BadPartition: return "BadPartition";
    case ErrorCode::ValidationFailed: return "ValidationFailed";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::AlphaBetaNotInOmega: return "AlphaBetaNotInOmega";
    case ErrorCode::ChiNotIrreducible: return "ChiNotIrreducible";
    case ErrorCode::ChiNotLinear: return "ChiNotLinear";
    case ErrorCode::NTooSmall: return "NTooSmall";
    case ErrorCode::ZeroInFirstColumn: return "ZeroInFirstColumn";
    case ErrorCode::LambdaOutOfRange: return "LambdaOutOfRange";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace gmf
