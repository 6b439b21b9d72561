#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hv {

enum class ErrorCode {
  Usage,
  Syntax,
  UnknownVariable,
  DivisionByZero,
  InsufficientPrecision,
  IndistinguishableFromZero,
  ElementsFromDifferentHandles,
  NotEnumerable,
  TNotSubgroup,
  NotStringent,
  FNotField,
  DoublingUnavailable,
  SegmentsNotIncreasing,
  NotSurjective,
  Undetermined,
  ZeroDivision,
  NewtonConditionFails,
  MixedSorts,
  HypothesisMismatch,
  Precondition,
  Unsupported,
  GuardRejected,
  Incompatible,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, std::size_t offset = 0)
      : std::runtime_error(std::string(error_name(code)) + ": " + what),
        code_(code),
        offset_(offset) {}

  ErrorCode code() const { return code_; }
  // Byte offset into the parsed text; only meaningful for Syntax and UnknownVariable.
  std::size_t offset() const { return offset_; }

 private:
  ErrorCode code_;
  std::size_t offset_;
};

// Precision-style failures map to CLI exit code 3.
bool is_precision_error(ErrorCode code);

}  // namespace hv
