#pragma once

#include <stdexcept>
#include <string>

namespace bast {

enum class ErrorCode {
  CoincidentPoints,
  DuplicatePoint,
  DegenerateSegment,
  ApexQuery,
  EmptyInput,
  NonFiniteCoordinate,
  ReorientAttempt,
  NonCenterFirst,
  UnorientedVertex,
  AtMostOneViolated,
  PathTooShort,
  EmptyMatching,
  AugmentationFailed,
  NonTermination,
  AlgorithmInvariantViolation,
  NotATree,
  DevirtualizeFailed,
  DuplicatePoints,
  TooLarge,
  InfeasibleUnexpected,
  InvalidConfig,
  InvalidDocument,
  IoFailure,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::DuplicatePoint: return "DuplicatePoint";
    case ErrorCode::DegenerateSegment: return "DegenerateSegment";
    case ErrorCode::ApexQuery: return "ApexQuery";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NonFiniteCoordinate: return "NonFiniteCoordinate";
    case ErrorCode::ReorientAttempt: return "ReorientAttempt";
    case ErrorCode::NonCenterFirst: return "NonCenterFirst";
    case ErrorCode::UnorientedVertex: return "UnorientedVertex";
    case ErrorCode::AtMostOneViolated: return "AtMostOneViolated";
    case ErrorCode::PathTooShort: return "PathTooShort";
    case ErrorCode::EmptyMatching: return "EmptyMatching";
    case ErrorCode::AugmentationFailed: return "AugmentationFailed";
    case ErrorCode::NonTermination: return "NonTermination";
    case ErrorCode::AlgorithmInvariantViolation: return "AlgorithmInvariantViolation";
    case ErrorCode::NotATree: return "NotATree";
    case ErrorCode::DevirtualizeFailed: return "DevirtualizeFailed";
    case ErrorCode::DuplicatePoints: return "DuplicatePoints";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InfeasibleUnexpected: return "InfeasibleUnexpected";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::InvalidDocument: return "InvalidDocument";
    case ErrorCode::IoFailure: return "IoFailure";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bast
