#include "invpso/error.hpp"

namespace invpso {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Io: return "IoError";
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::DuplicateTid: return "DuplicateTid";
    case ErrorCode::MissingLeadTimeRow: return "MissingLeadTimeRow";
    case ErrorCode::MissingRawMaterial: return "MissingRawMaterial";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::UnknownTid: return "UnknownTid";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::ZeroPrioritySum: return "ZeroPrioritySum";
    case ErrorCode::DegenerateLeadTimeWeights: return "DegenerateLeadTimeWeights";
    case ErrorCode::LogDomain: return "LogDomainError";
  }
  return "Error";
}

bool is_input_error(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Io:
    case ErrorCode::Parse:
    case ErrorCode::DuplicateTid:
    case ErrorCode::MissingLeadTimeRow:
    case ErrorCode::MissingRawMaterial:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::UnknownTid:
      return true;
    default:
      return false;
  }
}

}  // namespace invpso
