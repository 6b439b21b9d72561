#include "hyperval/errors.hpp"

namespace hv {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Usage: return "Usage";
    case ErrorCode::Syntax: return "Syntax";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::InsufficientPrecision: return "InsufficientPrecision";
    case ErrorCode::IndistinguishableFromZero: return "IndistinguishableFromZero";
    case ErrorCode::ElementsFromDifferentHandles: return "ElementsFromDifferentHandles";
    case ErrorCode::NotEnumerable: return "NotEnumerable";
    case ErrorCode::TNotSubgroup: return "TNotSubgroup";
    case ErrorCode::NotStringent: return "NotStringent";
    case ErrorCode::FNotField: return "FNotField";
    case ErrorCode::DoublingUnavailable: return "DoublingUnavailable";
    case ErrorCode::SegmentsNotIncreasing: return "SegmentsNotIncreasing";
    case ErrorCode::NotSurjective: return "NotSurjective";
    case ErrorCode::Undetermined: return "Undetermined";
    case ErrorCode::ZeroDivision: return "ZeroDivision";
    case ErrorCode::NewtonConditionFails: return "NewtonConditionFails";
    case ErrorCode::MixedSorts: return "MixedSorts";
    case ErrorCode::HypothesisMismatch: return "HypothesisMismatch";
    case ErrorCode::Precondition: return "Precondition";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::GuardRejected: return "GuardRejected";
    case ErrorCode::Incompatible: return "Incompatible";
  }
  return "Unknown";
}

bool is_precision_error(ErrorCode code) {
  return code == ErrorCode::InsufficientPrecision ||
         code == ErrorCode::IndistinguishableFromZero || code == ErrorCode::Undetermined;
}

}  // namespace hv
