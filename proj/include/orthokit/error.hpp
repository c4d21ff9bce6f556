#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "orthokit/bits.hpp"

namespace orthokit {

enum class ErrorCode {
  SymmetryViolation,
  SelfOrthogonalProper,
  FalsityNotOrthogonal,
  OwnerMismatch,
  FalsityMissing,
  FalsityChosen,
  SizeLimitExceeded,
  LimitExceeded,
  CapExceeded,
  InternalCriterionMismatch,
  NotOrthoclosed,
  NotAdjointable,
  NotParallelPreserving,
  NotIrredundant,
  NotJoinDense,
  DomainMismatch,
  IsotropicForm,
  KindMismatch,
  InvalidLattice,
  InvalidArgument,
  ParseError,
};

inline std::string_view to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::SymmetryViolation: return "SymmetryViolation";
    case ErrorCode::SelfOrthogonalProper: return "SelfOrthogonalProper";
    case ErrorCode::FalsityNotOrthogonal: return "FalsityNotOrthogonal";
    case ErrorCode::OwnerMismatch: return "OwnerMismatch";
    case ErrorCode::FalsityMissing: return "FalsityMissing";
    case ErrorCode::FalsityChosen: return "FalsityChosen";
    case ErrorCode::SizeLimitExceeded: return "SizeLimitExceeded";
    case ErrorCode::LimitExceeded: return "LimitExceeded";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::InternalCriterionMismatch: return "InternalCriterionMismatch";
    case ErrorCode::NotOrthoclosed: return "NotOrthoclosed";
    case ErrorCode::NotAdjointable: return "NotAdjointable";
    case ErrorCode::NotParallelPreserving: return "NotParallelPreserving";
    case ErrorCode::NotIrredundant: return "NotIrredundant";
    case ErrorCode::NotJoinDense: return "NotJoinDense";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::IsotropicForm: return "IsotropicForm";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::InvalidLattice: return "InvalidLattice";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Library error. `witness` carries the offending indices (pair, element,
/// vector coordinates, ...) where the error kind has one.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::vector<Index> witness = {})
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        witness_(std::move(witness)) {}

  ErrorCode code() const { return code_; }
  const std::vector<Index>& witness() const { return witness_; }

 private:
  ErrorCode code_;
  std::vector<Index> witness_;
};

}  // namespace orthokit
