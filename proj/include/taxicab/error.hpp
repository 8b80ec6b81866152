#pragma once

#include <stdexcept>
#include <string>

namespace taxicab {

enum class ErrorCode {
  // table validation
  NegativeEntry,
  AllZero,
  DuplicateLabel,
  TooSmall,
  // centering
  ZeroCell,
  NonPositiveConstant,
  // residual construction
  NotCentered,
  // search and decomposition
  DimensionMismatch,
  DimensionTooLarge,
  ZeroDispersion,
  // qsr and scores
  ZeroResidual,
  MismatchedAxes,
  ZeroMass,
  AxisOutOfRange,
  // ingestion and emission
  ParseError,
  RaggedRows,
  NonNumericCell,
  IoError,
  // style/config validation
  BadConfig,
  // violated internal identity (a bug, not a data problem)
  InternalCheck,
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::NegativeEntry:       return "NegativeEntry";
    case ErrorCode::AllZero:             return "AllZero";
    case ErrorCode::DuplicateLabel:      return "DuplicateLabel";
    case ErrorCode::TooSmall:            return "TooSmall";
    case ErrorCode::ZeroCell:            return "ZeroCell";
    case ErrorCode::NonPositiveConstant: return "NonPositiveConstant";
    case ErrorCode::NotCentered:         return "NotCentered";
    case ErrorCode::DimensionMismatch:   return "DimensionMismatch";
    case ErrorCode::DimensionTooLarge:   return "DimensionTooLarge";
    case ErrorCode::ZeroDispersion:      return "ZeroDispersion";
    case ErrorCode::ZeroResidual:        return "ZeroResidual";
    case ErrorCode::MismatchedAxes:      return "MismatchedAxes";
    case ErrorCode::ZeroMass:            return "ZeroMass";
    case ErrorCode::AxisOutOfRange:      return "AxisOutOfRange";
    case ErrorCode::ParseError:          return "ParseError";
    case ErrorCode::RaggedRows:          return "RaggedRows";
    case ErrorCode::NonNumericCell:      return "NonNumericCell";
    case ErrorCode::IoError:             return "IoError";
    case ErrorCode::BadConfig:           return "BadConfig";
    case ErrorCode::InternalCheck:       return "InternalCheck";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Data problems are the user's to fix; everything else is either a usage
// error (bad flags, infeasible request) or a bug.
inline bool is_data_error(ErrorCode c) {
  switch (c) {
    case ErrorCode::NegativeEntry:
    case ErrorCode::AllZero:
    case ErrorCode::DuplicateLabel:
    case ErrorCode::TooSmall:
    case ErrorCode::ZeroCell:
    case ErrorCode::ZeroResidual:
    case ErrorCode::ZeroMass:
    case ErrorCode::ParseError:
    case ErrorCode::RaggedRows:
    case ErrorCode::NonNumericCell:
    case ErrorCode::IoError:
      return true;
    default:
      return false;
  }
}

inline bool is_usage_error(ErrorCode c) {
  switch (c) {
    case ErrorCode::NonPositiveConstant:
    case ErrorCode::DimensionTooLarge:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::MismatchedAxes:
    case ErrorCode::AxisOutOfRange:
    case ErrorCode::BadConfig:
      return true;
    default:
      return false;
  }
}

}  // namespace taxicab
